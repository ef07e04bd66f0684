mod common;

use std::collections::BTreeSet;

use common::{naive_separates, ops};
use ltl_learn::exact::learn_exact;
use ltl_learn::hardness::{
    fixed3_fand_witness, fixed3_words, gen_hitting_fand, gen_hitting_fand_fixed3, gen_hitting_for, gen_setcover_xand,
    pad_for_x_fragments, setcover_threshold, HittingSetInstance, Padding, SetCoverInstance,
};
use ltl_learn::Sample;

fn sets(family: &[&[usize]]) -> Vec<BTreeSet<usize>> {
    family.iter().map(|s| s.iter().copied().collect()).collect()
}

#[test]
fn witnesses_separate_within_threshold() {
    let families: [&[&[usize]]; 4] = [&[&[1]], &[&[1, 2], &[2, 3]], &[&[1], &[2], &[3]], &[&[3], &[1, 3]]];
    for family in families {
        for budget in 0..=3 {
            let inst = HittingSetInstance::new(3, sets(family), budget).unwrap();
            for b in [gen_hitting_for(&inst).unwrap(), gen_hitting_fand(&inst).unwrap(), gen_hitting_fand_fixed3(&inst).unwrap()] {
                let k = b.constants.optimum.unwrap();
                assert_eq!(b.witness.is_some(), k <= budget && k > 0, "{}", b.reduction);
                if let Some(w) = &b.witness {
                    assert!(naive_separates(w, &b.sample) && w.size() <= b.threshold, "{}: {w}", b.reduction);
                }
            }
        }
    }
}

#[test]
fn small_setcover_matches_exact() {
    let inst = SetCoverInstance::new(2, sets(&[&[1], &[1, 2]]), 1).unwrap();
    let b = gen_setcover_xand(&inst).unwrap();
    let r = learn_exact(&b.sample, ops("X,and"), 9, true);
    assert_eq!(r.size(), Some(setcover_threshold(2, 1)));
    assert_eq!(b.witness.unwrap().size(), b.threshold);
}

#[test]
fn fixed3_words_count_letters() {
    let (u, v) = fixed3_words(2, &sets(&[&[1], &[2]]));
    let big_m = 8;
    assert_eq!(u.len(), 1 + 2 * (2 * (big_m + 1) + 1));
    assert_eq!(v[0].len(), u.len() - 2);
    assert_eq!(fixed3_fand_witness(2, &[1, 2]).size(), 3 * (2 * 2 * big_m + 3 * 2 + 1) - 1);
}

#[test]
fn manifest_lists_reduction_data() {
    let inst = HittingSetInstance::new(1, sets(&[&[1]]), 1).unwrap();
    let b = gen_hitting_fand_fixed3(&inst).unwrap();
    let m = b.manifest("sample.json");
    assert_eq!(m["reduction"], "fixed3-fand");
    assert_eq!(m["K"], 41);
    assert_eq!(m["witness_size"], 41);
    assert_eq!(m["constants"]["M"], 5);
    assert_eq!(m["fragment"], "F,and");
}

#[test]
fn padding_keeps_the_minimal_size() {
    let s = Sample::from_strs(&["ab"], &["aa", "bb"]);
    let Padding::Padded { sample, big_m } = pad_for_x_fragments(&s, false).unwrap() else { panic!() };
    let original = learn_exact(&s, ops("X,and"), big_m, true).size();
    assert_eq!(learn_exact(&sample, ops("F,G,X,and,or"), big_m, true).size(), original);
}
