use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use ltl_learn::exact::{learn_exact_with, ExactConfig};
use ltl_learn::fattern::learn_fand_heuristic;
use ltl_learn::formula::{parse, satisfies};
use ltl_learn::hardness::{
    gen_hitting_fand, gen_hitting_fand_fixed3, gen_hitting_for, gen_hitting_gor_fixed3, gen_setcover_xand,
    pad_for_x_fragments, GeneratedBenchmark, HittingSetInstance, Padding, SetCoverInstance,
};
use ltl_learn::minimal::{learn_minimal_with, MinimalError};
use ltl_learn::pattern::greedy_approx_xand;
use ltl_learn::sample::{load_sample, save_sample};
use ltl_learn::{separates, Formula, LearnResult, OperatorSet, Parallelism, Sample};

/// Learn LTL formulas over finite traces from positive and negative examples.
#[derive(Parser)]
#[command(name = "ltl-learn", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find a separating formula for a sample.
    ///
    /// Exit status: 0 found, 3 no separator exists, 4 none within the size
    /// bound, 2 bad input.
    Learn(LearnArgs),
    /// Write a benchmark sample and manifest from a hardness reduction.
    Generate(GenerateArgs),
    /// Check whether a formula separates a sample (exit 0 if so, 1 if not).
    Check(CheckArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// Smallest formula up to --max-size by enumeration.
    Exact,
    /// Smallest formula, bounded by a constructed separator.
    Minimal,
    /// Greedy pattern learner for {X,and}.
    GreedyXand,
    /// Fattern heuristic for {F,and}.
    Fattern,
    /// Minimal where supported, otherwise exact.
    Auto,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
}

#[derive(Args)]
struct LearnArgs {
    /// Sample file (JSON or text).
    #[arg(short, long)]
    input: PathBuf,
    /// Allowed operators, comma separated, from U,F,G,X,and,or,not.
    #[arg(short, long, default_value = "F,G,X,and,or")]
    fragment: String,
    #[arg(long, value_enum, default_value_t = Mode::Auto)]
    mode: Mode,
    /// Size bound for exact search.
    #[arg(short = 'k', long, default_value_t = 10)]
    max_size: usize,
    /// Stop exact search after storing this many formulas.
    #[arg(long)]
    max_formulas: Option<usize>,
    #[arg(short, long, value_enum, default_value_t = Output::Text)]
    output: Output,
    /// Worker threads for exact search: 0 picks automatically, 1 runs
    /// sequentially.
    #[arg(short, long, default_value_t = 0)]
    jobs: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReductionArg {
    HittingFor,
    SetcoverXand,
    HittingFand,
    Fixed3Fand,
    Fixed3Gor,
    PadX,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(value_enum)]
    reduction: ReductionArg,
    /// Ground set (hitting set) or universe (set cover) size.
    #[arg(short, long)]
    m: Option<usize>,
    /// One set, elements separated by commas or spaces; repeat per set.
    #[arg(short = 'T', long = "set")]
    sets: Vec<String>,
    /// Budget k.
    #[arg(short, long)]
    k: Option<usize>,
    /// Instance as JSON ({"ground"|"universe", "sets", "budget"}) instead of -m/-T/-k.
    #[arg(long, conflicts_with_all = ["m", "sets", "k"])]
    instance: Option<PathBuf>,
    /// Sample to pad (pad-x only).
    #[arg(long)]
    input: Option<PathBuf>,
    /// pad-x: pad a single negative word instead of a single positive one.
    #[arg(long)]
    dual: bool,
    /// Output directory.
    #[arg(short, long, default_value = ".")]
    out_dir: PathBuf,
    /// File stem for the sample and manifest; defaults to the reduction name.
    #[arg(long)]
    name: Option<String>,
    /// Warn when the generated sample has more letters than this.
    #[arg(long, default_value_t = 1_000_000)]
    warn_length: usize,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(short, long)]
    formula: String,
    #[arg(short, long)]
    input: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Learn(a) => learn(&a),
        Command::Generate(a) => generate(&a),
        Command::Check(a) => check(&a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn learn(a: &LearnArgs) -> Result<ExitCode> {
    let ops = OperatorSet::parse(&a.fragment)?;
    let s = load_sample(&a.input).with_context(|| format!("loading {}", a.input.display()))?;
    let mut cfg = ExactConfig::new(a.max_size).with_parallelism(Parallelism::from_jobs(a.jobs));
    cfg.max_formulas = a.max_formulas;

    let start = Instant::now();
    let (result, minimal, note) = run_mode(a.mode, &s, ops, &cfg)?;
    let elapsed = start.elapsed();

    let code = match &result {
        LearnResult::Found { .. } => 0,
        LearnResult::NoSeparatorExists => 3,
        LearnResult::NoneWithinBound { .. } => 4,
    };
    match a.output {
        Output::Json => {
            let mut report = json!({
                "outcome": outcome_name(&result),
                "minimal": minimal,
                "elapsed_ms": elapsed.as_secs_f64() * 1e3,
            });
            match &result {
                LearnResult::Found { formula, size } => {
                    report["formula"] = json!(formula.to_string());
                    report["size"] = json!(size);
                }
                LearnResult::NoneWithinBound { bound } => report["bound"] = json!(bound),
                LearnResult::NoSeparatorExists => {}
            }
            if let Some(n) = &note {
                report["note"] = json!(n);
            }
            println!("{}", serde_json::to_string_pretty(&report)?);
        }
        Output::Text => {
            match &result {
                LearnResult::Found { formula, size } => {
                    println!("formula: {formula}");
                    println!("size: {size}{}", if minimal { " (minimal)" } else { "" });
                }
                LearnResult::NoSeparatorExists => println!("no separator exists in this fragment"),
                LearnResult::NoneWithinBound { bound } => println!("no separator of size at most {bound}"),
            }
            if let Some(n) = &note {
                println!("note: {n}");
            }
            println!("time: {:.3} ms", elapsed.as_secs_f64() * 1e3);
        }
    }
    Ok(ExitCode::from(code))
}

fn outcome_name(r: &LearnResult) -> &'static str {
    match r {
        LearnResult::Found { .. } => "found",
        LearnResult::NoSeparatorExists => "no_separator_exists",
        LearnResult::NoneWithinBound { .. } => "none_within_bound",
    }
}

/// Result, whether it is known to be minimal, and an optional remark.
fn run_mode(
    mode: Mode,
    s: &Sample,
    ops: OperatorSet,
    cfg: &ExactConfig,
) -> Result<(LearnResult, bool, Option<String>)> {
    let fragment = |list: &str| OperatorSet::parse(list).expect("static operator list");
    Ok(match mode {
        Mode::Exact => (learn_exact_with(s, ops, cfg)?, true, None),
        Mode::Minimal => (learn_minimal_with(s, ops, cfg)?, true, None),
        Mode::GreedyXand => {
            if ops != fragment("X,and") {
                bail!("greedy-xand needs --fragment X,and, got {ops}");
            }
            let r = greedy_approx_xand(s).map_or(LearnResult::NoSeparatorExists, |p| LearnResult::found(p.to_formula()));
            (r, false, None)
        }
        Mode::Fattern => {
            if ops != fragment("F,and") {
                bail!("fattern needs --fragment F,and, got {ops}");
            }
            (learn_fand_heuristic(s), false, None)
        }
        Mode::Auto => match learn_minimal_with(s, ops, cfg) {
            Ok(r) => (r, true, None),
            Err(MinimalError::UnsupportedFragment(_)) => {
                let note = format!("no existence procedure for {ops}; exact search up to size {}", cfg.max_size);
                (learn_exact_with(s, ops, cfg)?, true, Some(note))
            }
            Err(MinimalError::Exhausted { separator, source }) => {
                (LearnResult::found(separator), false, Some(format!("{source}; returning the constructed separator")))
            }
            Err(e) => return Err(e.into()),
        },
    })
}

fn parse_set(text: &str) -> Result<BTreeSet<usize>> {
    text.split([',', ' '])
        .filter(|t| !t.is_empty())
        .map(|t| t.trim().parse::<usize>().with_context(|| format!("bad set element {t:?}")))
        .collect()
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn hitting_instance(a: &GenerateArgs) -> Result<HittingSetInstance> {
    if let Some(path) = &a.instance {
        let inst: HittingSetInstance = read_json(path)?;
        inst.validate()?;
        return Ok(inst);
    }
    let (Some(m), Some(k)) = (a.m, a.k) else { bail!("give -m and -k, or --instance") };
    let sets = a.sets.iter().map(|t| parse_set(t)).collect::<Result<_>>()?;
    Ok(HittingSetInstance::new(m, sets, k)?)
}

fn setcover_instance(a: &GenerateArgs) -> Result<SetCoverInstance> {
    if let Some(path) = &a.instance {
        let inst: SetCoverInstance = read_json(path)?;
        inst.validate()?;
        return Ok(inst);
    }
    let (Some(m), Some(k)) = (a.m, a.k) else { bail!("give -m and -k, or --instance") };
    let sets = a.sets.iter().map(|t| parse_set(t)).collect::<Result<_>>()?;
    Ok(SetCoverInstance::new(m, sets, k)?)
}

fn generate(a: &GenerateArgs) -> Result<ExitCode> {
    let bench: GeneratedBenchmark = match a.reduction {
        ReductionArg::HittingFor => gen_hitting_for(&hitting_instance(a)?)?,
        ReductionArg::SetcoverXand => gen_setcover_xand(&setcover_instance(a)?)?,
        ReductionArg::HittingFand => gen_hitting_fand(&hitting_instance(a)?)?,
        ReductionArg::Fixed3Fand => gen_hitting_fand_fixed3(&hitting_instance(a)?)?,
        ReductionArg::Fixed3Gor => gen_hitting_gor_fixed3(&hitting_instance(a)?)?,
        ReductionArg::PadX => return pad(a),
    };
    let stem = a.name.clone().unwrap_or_else(|| bench.reduction.to_string());
    let sample_file = write_sample(a, &stem, &bench.sample)?;
    write_manifest(a, &stem, &bench.manifest(&sample_file))?;
    println!("K: {}", bench.threshold);
    match (&bench.witness, &bench.claimed_witness) {
        (Some(w), _) => println!("witness size: {}", w.size()),
        (None, Some(c)) => println!("witness size: none (claimed witness of size {} does not qualify)", c.size),
        (None, None) => println!("witness size: none"),
    }
    if bench.infeasible {
        println!("source instance is infeasible");
    }
    Ok(ExitCode::SUCCESS)
}

fn pad(a: &GenerateArgs) -> Result<ExitCode> {
    let Some(input) = &a.input else { bail!("pad-x needs --input <sample>") };
    let s = load_sample(input).with_context(|| format!("loading {}", input.display()))?;
    let Padding::Padded { sample, big_m } = pad_for_x_fragments(&s, a.dual)? else {
        bail!("the single word also occurs on the other side; nothing to pad");
    };
    let stem = a.name.clone().unwrap_or_else(|| "pad-x".to_string());
    let sample_file = write_sample(a, &stem, &sample)?;
    let manifest = json!({
        "reduction": "pad-x",
        "source_sample": input.display().to_string(),
        "sample_file": sample_file,
        "fragment": OperatorSet::parse("F,G,X,and,or")?,
        "dual": a.dual,
        "constants": { "M": big_m },
    });
    write_manifest(a, &stem, &manifest)?;
    println!("M: {big_m}");
    Ok(ExitCode::SUCCESS)
}

fn write_sample(a: &GenerateArgs, stem: &str, s: &Sample) -> Result<String> {
    fs::create_dir_all(&a.out_dir).with_context(|| format!("creating {}", a.out_dir.display()))?;
    let letters: usize = s.words().map(|w| w.len()).sum();
    if letters > a.warn_length {
        eprintln!("warning: generated sample has {letters} letters (above {})", a.warn_length);
    }
    let file = format!("{stem}.sample.json");
    save_sample(s, a.out_dir.join(&file))?;
    Ok(file)
}

fn write_manifest(a: &GenerateArgs, stem: &str, manifest: &serde_json::Value) -> Result<()> {
    let path = a.out_dir.join(format!("{stem}.manifest.json"));
    fs::write(&path, serde_json::to_string_pretty(manifest)? + "\n")
        .with_context(|| format!("writing {}", path.display()))
}

fn check(a: &CheckArgs) -> Result<ExitCode> {
    let phi: Formula = parse(&a.formula).with_context(|| format!("parsing formula {:?}", a.formula))?;
    let s = load_sample(&a.input).with_context(|| format!("loading {}", a.input.display()))?;
    println!("{:<4} {:<5} word", "side", "holds");
    for (side, words, want) in [("+", s.positive(), true), ("-", s.negative(), false)] {
        for w in words {
            let holds = satisfies(&phi, w);
            let mark = if holds == want { "" } else { "  <- wrong" };
            println!("{side:<4} {:<5} {w}{mark}", if holds { "yes" } else { "no" });
        }
    }
    let ok = separates(&phi, &s);
    println!("{}", if ok { "separates" } else { "does not separate" });
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
