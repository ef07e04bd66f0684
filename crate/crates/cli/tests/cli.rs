use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ltl-learn")).args(args).current_dir(dir).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn sample(dir: &Path, name: &str, text: &str) -> String {
    fs::write(dir.join(name), text).unwrap();
    name.to_string()
}

#[test]
fn learn_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let first = sample(d, "first.txt", "+\na b\na\n-\nb a\n");
    let o = run(&["learn", "-i", &first, "--mode", "exact", "-k", "1"], d);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("formula: a\n"));

    let s = sample(d, "s.txt", "+\na b\n-\na\nb b\n");
    assert_eq!(run(&["learn", "-i", &s, "--mode", "exact", "-k", "3"], d).status.code(), Some(4));
    let none = sample(d, "none.txt", "+\na b\n-\na a b\n");
    assert_eq!(run(&["learn", "-i", &none, "-f", "F,and"], d).status.code(), Some(3));
    let overlap = sample(d, "overlap.txt", "+\na\n-\na\n");
    assert_eq!(run(&["learn", "-i", &overlap], d).status.code(), Some(2));
    assert_eq!(run(&["learn", "-i", &s, "-f", "F,W"], d).status.code(), Some(2));
    assert_eq!(run(&["learn", "-i", &s, "--mode", "greedy-xand", "-f", "F,and"], d).status.code(), Some(2));
}

#[test]
fn learned_formulas_pass_check() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let s = sample(d, "s.txt", "+\na b c\nc b c\n-\nb\na c c\nc c\n");
    for (mode, fragment) in [
        ("auto", "F,G,X,and,or"),
        ("minimal", "F,and,or"),
        ("exact", "U,and"),
        ("fattern", "F,and"),
        ("greedy-xand", "X,and"),
    ] {
        let o = run(&["learn", "-i", &s, "--mode", mode, "-f", fragment, "-o", "json"], d);
        let report = json(&o);
        if report["outcome"] != "found" {
            continue;
        }
        let f = report["formula"].as_str().unwrap();
        let c = run(&["check", "-f", f, "-i", &s], d);
        assert_eq!(c.status.code(), Some(0), "{mode}: {f}\n{}", stdout(&c));
    }
}

#[test]
fn output_does_not_depend_on_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let s = sample(d, "s.txt", "+\na b a\nb b a\n-\na a\nb a b\n");
    let formula = |jobs: &str| {
        let o = run(&["learn", "-i", &s, "--mode", "exact", "-k", "8", "-j", jobs, "-o", "json"], d);
        json(&o)["formula"].clone()
    };
    assert_eq!(formula("1"), formula("4"));
}

#[test]
fn check_reports_each_word() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let s = sample(d, "s.txt", "+\na b\n-\nb\n");
    let o = run(&["check", "-f", "true", "-i", &s], d);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("<- wrong"));
    assert_eq!(run(&["check", "-f", "(a &", "-i", &s], d).status.code(), Some(2));
    assert_eq!(run(&["check", "-f", "(a & X b)", "-i", &s], d).status.code(), Some(0));
}

#[test]
fn generate_writes_sample_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let o = run(&["generate", "fixed3-fand", "-m", "1", "-T", "1", "-k", "1", "-o", "out"], d);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("K: 41"));
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(d.join("out/fixed3-fand.manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["witness_size"], 41);
    let witness = manifest["witness"].as_str().unwrap().to_string();
    let c = run(&["check", "-f", &witness, "-i", "out/fixed3-fand.sample.json"], d);
    assert_eq!(c.status.code(), Some(0));

    let o = run(&["generate", "hitting-for", "-m", "2", "-T", "1", "-T", "1,2", "-k", "0", "--name", "h"], d);
    assert_eq!(o.status.code(), Some(0));
    let manifest: serde_json::Value = serde_json::from_str(&fs::read_to_string(d.join("h.manifest.json")).unwrap()).unwrap();
    assert!(manifest["witness"].is_null());

    let o = run(&["generate", "setcover-xand", "-m", "2", "-T", "1", "-T", "2", "-k", "2", "--name", "sc"], d);
    assert_eq!(o.status.code(), Some(0));
    let g = run(&["learn", "-i", "sc.sample.json", "--mode", "greedy-xand", "-f", "X,and"], d);
    assert!(stdout(&g).contains("size: 7"), "{}", stdout(&g));

    let two = sample(d, "two.txt", "+\na b\nb a\n-\na a\n");
    assert_eq!(run(&["generate", "pad-x", "--input", &two], d).status.code(), Some(2));
    let one = sample(d, "one.txt", "+\na b\n-\na a\nb b\n");
    let o = run(&["generate", "pad-x", "--input", &one, "--name", "p"], d);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("M: 4"));
    let l = run(&["learn", "-i", "p.sample.json", "--mode", "exact", "-f", "F,X,and,or", "-k", "4"], d);
    assert!(stdout(&l).contains("size: 4"), "{}", stdout(&l));
}

#[test]
fn auto_falls_back_on_exhaustion() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let s = sample(d, "s.txt", "+\na b c a\nc b a c\n-\nb\na c\nc a b\n");
    let o = run(&["learn", "-i", &s, "-f", "F,G,and,or", "--max-formulas", "5", "-o", "json"], d);
    let report = json(&o);
    assert_eq!(report["outcome"], "found");
    assert_eq!(report["minimal"], false);
    let c = run(&["check", "-f", report["formula"].as_str().unwrap(), "-i", &s], d);
    assert_eq!(c.status.code(), Some(0));
}
