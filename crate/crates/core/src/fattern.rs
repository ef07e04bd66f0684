//! `LTL(F, and)`: fatterns, the subword characterization, forest formulas
//! and chain shrinking.
//!
//! Every `LTL(F, and)` formula is either unsatisfiable or equivalent to "all
//! of the non-repeating words `w_1..w_p` are subwords, and the word starts
//! with `c`" for an optional letter `c`. Over a two-letter alphabet every
//! non-repeating word alternates, so such a characterization only bounds the
//! number of alternations from below.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{satisfies, truth_row, Formula, Operator, OperatorSet, Symbol};
use crate::sample::{
    collapse_runs, common_weak_subword_avoiding, is_non_repeating, is_subword, is_weak_subword, separates,
    LearnResult, Sample,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FatternError {
    #[error("word {0:?} repeats a letter in consecutive positions")]
    Repeating(String),
    #[error("formula uses {0:?}, outside F and and")]
    OutsideFragment(Operator),
    #[error("the formula does not separate the sample")]
    NotSeparating,
    #[error("the sample must have exactly one positive word, found {0}")]
    NotSinglePositive(usize),
    #[error("chain precondition violated: {0}")]
    Chain(&'static str),
}

fn show(w: &[Symbol]) -> String {
    w.iter().map(Symbol::as_str).collect::<Vec<_>>().join(" ")
}

/// `F(w_1 & F(w_2 & ... F w_k))`, or `w_1 & F(w_2 & ...)` when grounded.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fattern {
    word: Vec<Symbol>,
    grounded: bool,
}

impl Fattern {
    pub fn new(word: Vec<Symbol>, grounded: bool) -> Result<Self, FatternError> {
        if word.is_empty() || !is_non_repeating(&word) {
            return Err(FatternError::Repeating(show(&word)));
        }
        Ok(Fattern { word, grounded })
    }

    pub fn word(&self) -> &[Symbol] {
        &self.word
    }

    pub fn is_grounded(&self) -> bool {
        self.grounded
    }

    pub fn size(&self) -> usize {
        3 * self.word.len() - if self.grounded { 2 } else { 1 }
    }

    pub fn to_formula(&self) -> Formula {
        let mut acc = Formula::eventually(Formula::Letter(self.word.last().expect("non-empty").clone()));
        for c in self.word.iter().rev().skip(1) {
            acc = Formula::eventually(Formula::and(Formula::Letter(c.clone()), acc));
        }
        match (self.grounded, acc) {
            (true, Formula::Eventually(inner)) => *inner,
            (_, acc) => acc,
        }
    }

    pub fn matches(&self, z: &[Symbol]) -> bool {
        !z.is_empty() && (!self.grounded || z[0] == self.word[0]) && is_subword(&self.word, z)
    }
}

/// Fattern of a non-repeating word.
pub fn fattern_of(w: &[Symbol], grounded: bool) -> Result<Fattern, FatternError> {
    Fattern::new(w.to_vec(), grounded)
}

/// Normal form of an `LTL(F, and)` formula.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum FandCharacterization {
    False,
    Words { words: Vec<Vec<Symbol>>, initial: Option<Symbol> },
}

impl FandCharacterization {
    /// Whether `z` has every word as a subword and starts with the initial
    /// letter.
    pub fn accepts(&self, z: &[Symbol]) -> bool {
        match self {
            FandCharacterization::False => false,
            FandCharacterization::Words { words, initial } => {
                !z.is_empty()
                    && initial.as_ref().is_none_or(|c| &z[0] == c)
                    && words.iter().all(|w| is_subword(w, z))
            }
        }
    }

    /// Total length of the words.
    pub fn total_len(&self) -> usize {
        match self {
            FandCharacterization::False => 0,
            FandCharacterization::Words { words, .. } => words.iter().map(Vec::len).sum(),
        }
    }

    /// Drops words implied by others and, under an initial letter `c`, the
    /// leading `c` of words (a `c` at position 1 is already guaranteed).
    /// Words end up sorted.
    pub fn reduced(self) -> Self {
        let FandCharacterization::Words { mut words, initial } = self else {
            return FandCharacterization::False;
        };
        if let Some(c) = &initial {
            for w in &mut words {
                if w.first() == Some(c) {
                    w.remove(0);
                }
            }
        }
        words.retain(|w| !w.is_empty());
        words.sort();
        words.dedup();
        let keep: Vec<Vec<Symbol>> = words
            .iter()
            .filter(|w| !words.iter().any(|x| x != *w && is_subword(w, x)))
            .cloned()
            .collect();
        FandCharacterization::Words { words: keep, initial }
    }
}

/// Characterization of `phi`, in reduced form.
pub fn characterize_fand(phi: &Formula) -> Result<FandCharacterization, FatternError> {
    use FandCharacterization::*;
    Ok(match phi {
        Formula::True => Words { words: vec![], initial: None },
        Formula::False => False,
        Formula::Letter(c) => Words { words: vec![], initial: Some(c.clone()) },
        Formula::Eventually(g) => match characterize_fand(g)? {
            False => False,
            Words { words, initial: None } => Words { words, initial: None },
            Words { words, initial: Some(c) } => {
                let mut out: Vec<Vec<Symbol>> = words
                    .into_iter()
                    .map(|w| if w.first() == Some(&c) { w } else { std::iter::once(c.clone()).chain(w).collect() })
                    .collect();
                if out.is_empty() {
                    out.push(vec![c]);
                }
                Words { words: out, initial: None }.reduced()
            }
        },
        Formula::And(l, r) => match (characterize_fand(l)?, characterize_fand(r)?) {
            (False, _) | (_, False) => False,
            (Words { words: w1, initial: c1 }, Words { words: w2, initial: c2 }) => {
                let initial = match (c1, c2) {
                    (Some(a), Some(b)) if a != b => return Ok(False),
                    (a, b) => a.or(b),
                };
                Words { words: w1.into_iter().chain(w2).collect(), initial }.reduced()
            }
        },
        other => return Err(FatternError::OutsideFragment(other.operator().expect("non-atomic formula"))),
    })
}

/// Formula of a characterization built from the prefix forest of its words:
/// each trie node `t` with letter `x` becomes `F(x & child_1 & ...)`, trees
/// and children ordered by letter, the initial letter first.
///
/// Minimal among equivalent formulas when the words come from
/// [`FandCharacterization::reduced`]; with redundant words it is not.
pub fn forest_formula(words: &[Vec<Symbol>], initial: Option<&Symbol>) -> Result<Formula, FatternError> {
    #[derive(Default)]
    struct Node(BTreeMap<Symbol, Node>);
    fn build(letter: &Symbol, node: &Node) -> Formula {
        let children = node.0.iter().map(|(c, n)| build(c, n));
        Formula::eventually(Formula::conjunction(std::iter::once(Formula::Letter(letter.clone())).chain(children)))
    }
    let mut root = Node::default();
    for w in words {
        if w.is_empty() || !is_non_repeating(w) {
            return Err(FatternError::Repeating(show(w)));
        }
        let mut at = &mut root;
        for c in w {
            at = at.0.entry(c.clone()).or_default();
        }
    }
    let trees = root.0.iter().map(|(c, n)| build(c, n));
    let parts: Vec<Formula> = initial.map(|c| Formula::Letter(c.clone())).into_iter().chain(trees).collect();
    Ok(Formula::conjunction(parts))
}

/// Nesting shape of a chain of formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainMode {
    /// `F(psi_1 & F(psi_2 & ... F psi_r))`, falsified by the word.
    Eventually,
    /// `G(psi_1 | G(psi_2 | ... G psi_r))`, satisfied by the word.
    Globally,
}

pub fn f_chain(chain: &[Formula]) -> Formula {
    let mut it = chain.iter().rev();
    let mut acc = Formula::eventually(it.next().expect("non-empty chain").clone());
    for f in it {
        acc = Formula::eventually(Formula::and(f.clone(), acc));
    }
    acc
}

pub fn g_chain(chain: &[Formula]) -> Formula {
    let mut it = chain.iter().rev();
    let mut acc = Formula::globally(it.next().expect("non-empty chain").clone());
    for f in it {
        acc = Formula::globally(Formula::or(f.clone(), acc));
    }
    acc
}

/// Indices (0-based, increasing, at most `|v| + 1` of them) of a sub-chain
/// that keeps the word's verdict and is implied by (F mode) or implies
/// (G mode) the whole chain.
///
/// The chain members are placed greedily along `v`: each at the earliest
/// suffix position not before the previous one where it holds (where it
/// fails, in G mode). Members whose position equals the previous one add
/// nothing and are dropped; the first member with no position is kept last.
pub fn shrink_chain(chain: &[Formula], v: &[Symbol], mode: ChainMode) -> Result<Vec<usize>, FatternError> {
    if chain.is_empty() {
        return Err(FatternError::Chain("empty chain"));
    }
    if v.is_empty() {
        return Err(FatternError::Chain("empty word"));
    }
    match mode {
        ChainMode::Eventually if satisfies(&f_chain(chain), v) => {
            return Err(FatternError::Chain("the word satisfies the F-chain"))
        }
        ChainMode::Globally if !satisfies(&g_chain(chain), v) => {
            return Err(FatternError::Chain("the word falsifies the G-chain"))
        }
        _ => {}
    }
    let target = mode == ChainMode::Eventually;
    let mut at = 0;
    let mut picked = Vec::new();
    for (i, psi) in chain.iter().enumerate() {
        let row = truth_row(psi, v);
        let hit = (at..v.len()).find(|&p| row[p] == target);
        match hit {
            Some(p) if p == at => {}
            Some(p) => {
                picked.push(i);
                at = p;
            }
            None => {
                picked.push(i);
                return Ok(picked);
            }
        }
    }
    unreachable!("the precondition guarantees a member without position")
}

/// Conjunction of fatterns, optionally with an initial letter.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FatternConjunction {
    pub initial: Option<Symbol>,
    pub words: Vec<Vec<Symbol>>,
}

impl FatternConjunction {
    pub fn fattern_count(&self) -> usize {
        self.words.len()
    }

    /// The initial letter merges with the first word that starts with it
    /// into one grounded fattern.
    pub fn to_formula(&self) -> Formula {
        let mut parts = Vec::new();
        let mut merged = None;
        if let Some(c) = &self.initial {
            merged = self.words.iter().position(|w| w.first() == Some(c));
            parts.push(match merged {
                Some(k) => Fattern { word: self.words[k].clone(), grounded: true }.to_formula(),
                None => Formula::Letter(c.clone()),
            });
        }
        for (k, w) in self.words.iter().enumerate() {
            if Some(k) != merged {
                parts.push(Fattern { word: w.clone(), grounded: false }.to_formula());
            }
        }
        Formula::conjunction(parts)
    }
}

fn check_fand(phi: &Formula) -> Result<(), FatternError> {
    let allowed = OperatorSet::of(&[Operator::Eventually, Operator::And]);
    match phi.operators().iter().find(|op| !allowed.contains(*op)) {
        Some(op) => Err(FatternError::OutsideFragment(op)),
        None => Ok(()),
    }
}

/// At most `|N|` fatterns (plus an initial letter) separating `s`, taken
/// from the characterization of a separating `phi`: for each negative word,
/// the first characterization word it lacks. The initial letter is kept
/// when some negative word does not start with it.
pub fn normalize_fand(phi: &Formula, s: &Sample) -> Result<FatternConjunction, FatternError> {
    check_fand(phi)?;
    if !separates(phi, s) {
        return Err(FatternError::NotSeparating);
    }
    let FandCharacterization::Words { words, initial } = characterize_fand(phi)? else {
        // unsatisfiable and separating: no positive words
        return Ok(FatternConjunction { initial: None, words: vec![] });
    };
    let s = s.deduplicated();
    let keep_initial = initial.filter(|c| s.negative().iter().any(|v| &v[0] != c));
    let mut picked: Vec<Vec<Symbol>> = Vec::new();
    for v in s.negative() {
        if keep_initial.as_ref().is_some_and(|c| &v[0] != c) {
            continue;
        }
        let w = words.iter().find(|w| !is_subword(w, v)).expect("phi rejects v");
        if !picked.contains(w) {
            picked.push(w.clone());
        }
    }
    Ok(FatternConjunction { initial: keep_initial, words: picked })
}

/// A single fattern, no larger than `phi`, separating a sample with one
/// positive word `u`: the letters of `u` at the union of the leftmost
/// embeddings of the characterization words (and position 1 when
/// grounded), with runs collapsed.
pub fn normalize_fand_single_positive(phi: &Formula, s: &Sample) -> Result<Fattern, FatternError> {
    check_fand(phi)?;
    let s = s.deduplicated();
    if s.positive().len() != 1 {
        return Err(FatternError::NotSinglePositive(s.positive().len()));
    }
    if !separates(phi, &s) {
        return Err(FatternError::NotSeparating);
    }
    let u = &s.positive()[0];
    let FandCharacterization::Words { words, initial } = characterize_fand(phi)? else {
        unreachable!("a satisfiable formula accepts u");
    };
    let mut positions = std::collections::BTreeSet::new();
    if initial.is_some() {
        positions.insert(0);
    }
    for w in &words {
        let mut from = 0;
        for c in w {
            let p = (from..u.len()).find(|&p| &u[p] == c).expect("w is a subword of u");
            positions.insert(p);
            from = p + 1;
        }
    }
    let letters: Vec<Symbol> = positions.into_iter().map(|p| u[p].clone()).collect();
    let f = Fattern::new(collapse_runs(&letters), initial.is_some())?;
    debug_assert!(separates(&f.to_formula(), &s));
    Ok(f)
}

/// Separator in `LTL(F, and)` built per negative word, or a proof that none
/// exists.
///
/// A negative word that does not start with the common first letter of the
/// positives is rejected by that letter; otherwise by an already chosen word
/// it lacks, or else by the shortest common weak subword of the positives
/// that it lacks. If neither exists no `LTL(F, and)` formula separates.
pub fn learn_fand_heuristic(s: &Sample) -> LearnResult {
    if s.has_overlap() {
        return LearnResult::NoSeparatorExists;
    }
    let s = s.deduplicated();
    if s.positive().is_empty() {
        return LearnResult::found(Formula::False);
    }
    if s.negative().is_empty() {
        return LearnResult::found(Formula::True);
    }
    let first = s.positive()[0][0].clone();
    let ground = s.positive().iter().all(|u| u[0] == first).then_some(first);
    let positives: Vec<Vec<Symbol>> = s.positive().iter().map(|u| u.letters().to_vec()).collect();
    let mut used_ground = false;
    let mut words: Vec<Vec<Symbol>> = Vec::new();
    for v in s.negative() {
        if ground.as_ref().is_some_and(|c| &v[0] != c) {
            used_ground = true;
            continue;
        }
        if words.iter().any(|w| !is_weak_subword(w, v)) {
            continue;
        }
        match common_weak_subword_avoiding(&positives, v) {
            Some(w) => words.push(collapse_runs(&w)),
            None => return LearnResult::NoSeparatorExists,
        }
    }
    let conj = FatternConjunction { initial: if used_ground { ground } else { None }, words };
    let f = conj.to_formula();
    debug_assert!(separates(&f, &s));
    LearnResult::found(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{parse, Word};

    fn w(s: &str) -> Vec<Symbol> {
        Word::from_chars(s).into_letters()
    }

    fn p(s: &str) -> Formula {
        parse(s).unwrap()
    }

    #[test]
    fn fattern_formulas() {
        let f = fattern_of(&w("ab"), false).unwrap();
        assert_eq!(f.to_formula(), p("F (a & F b)"));
        assert_eq!(f.size(), 5);
        assert_eq!(f.to_formula().size(), 5);
        let g = fattern_of(&w("a"), true).unwrap();
        assert_eq!(g.to_formula(), p("a"));
        assert_eq!(g.size(), 1);
        let h = fattern_of(&w("aba"), false).unwrap();
        assert!(satisfies(&h.to_formula(), &w("aaba")));
        assert!(!satisfies(&h.to_formula(), &w("ab")));
        assert!(fattern_of(&w("abb"), false).is_err());
        assert_eq!(fattern_of(&w("ab"), true).unwrap().to_formula(), p("(a & F b)"));
    }

    #[test]
    fn characterization_cases() {
        let letter = characterize_fand(&p("c")).unwrap();
        assert_eq!(letter, FandCharacterization::Words { words: vec![], initial: Some(Symbol::new("c").unwrap()) });
        assert_eq!(characterize_fand(&p("(a & b)")).unwrap(), FandCharacterization::False);
        assert_eq!(
            characterize_fand(&p("F (b & F a)")).unwrap(),
            FandCharacterization::Words { words: vec![w("ba")], initial: None }
        );
        assert!(characterize_fand(&p("G a")).is_err());
    }

    #[test]
    fn forest_example() {
        let a = Symbol::new("a").unwrap();
        let f = forest_formula(&[w("ab"), w("ac"), w("bab")], Some(&a)).unwrap();
        let mut got: Vec<String> = f.conjuncts().iter().map(|c| c.to_string()).collect();
        got.sort();
        let mut want = vec!["a".to_string(), "F (b & F (a & F b))".into(), "F (a & (F b & F c))".into()];
        want.sort();
        assert_eq!(got, want);
        assert_eq!(forest_formula(&[w("b")], None).unwrap(), p("F b"));
        assert_eq!(forest_formula(&[w("ab"), w("ba")], None).unwrap(), p("(F (a & F b) & F (b & F a))"));
    }

    #[test]
    fn chain_shrinking() {
        let chain: Vec<Formula> = "ababa".chars().map(|c| p(&c.to_string())).collect();
        let idx = shrink_chain(&chain, &w("ab"), ChainMode::Eventually).unwrap();
        assert!(idx.len() <= 3);
        let sub: Vec<Formula> = idx.iter().map(|&i| chain[i].clone()).collect();
        assert!(!satisfies(&f_chain(&sub), &w("ab")));
        assert_eq!(shrink_chain(&[p("a")], &w("b"), ChainMode::Eventually).unwrap(), vec![0]);
        // the first member must not be kept blindly: F b alone accepts "ab"
        let idx = shrink_chain(&[p("b"), p("a")], &w("ab"), ChainMode::Eventually).unwrap();
        let sub: Vec<Formula> = idx.iter().map(|&i| [p("b"), p("a")][i].clone()).collect();
        assert!(!satisfies(&f_chain(&sub), &w("ab")));
    }

    #[test]
    fn g_chain_shrinking() {
        let chain = vec![p("b"), p("a"), p("b"), p("a")];
        let u = w("ba");
        assert!(satisfies(&g_chain(&chain), &u));
        let idx = shrink_chain(&chain, &u, ChainMode::Globally).unwrap();
        assert!(idx.len() <= u.len() + 1);
        let sub: Vec<Formula> = idx.iter().map(|&i| chain[i].clone()).collect();
        assert!(satisfies(&g_chain(&sub), &u));
        assert!(shrink_chain(&[p("a"), p("b")], &w("ba"), ChainMode::Globally).is_err());
    }

    #[test]
    fn fand_normalization() {
        let s = Sample::from_strs(&["cab"], &["cb", "ab"]);
        let phi = p("(F (a & F b) & F c)");
        let n = normalize_fand(&phi, &s).unwrap();
        assert_eq!(n.words, vec![w("ab"), w("c")]);
        assert_eq!(n.to_formula(), phi);
    }

    #[test]
    fn single_positive_normalization() {
        let s = Sample::from_strs(&["ab"], &["aa", "bb"]);
        let f = normalize_fand_single_positive(&p("(F a & F b)"), &s).unwrap();
        assert_eq!(f, fattern_of(&w("ab"), false).unwrap());
        let s = Sample::from_strs(&["ab"], &["aa"]);
        assert_eq!(normalize_fand_single_positive(&p("F b"), &s).unwrap(), fattern_of(&w("b"), false).unwrap());
        let s = Sample::from_strs(&["ab"], &["ba"]);
        assert_eq!(
            normalize_fand_single_positive(&p("(a & F b)"), &s).unwrap(),
            fattern_of(&w("ab"), true).unwrap()
        );
    }

    #[test]
    fn heuristic_learner() {
        let r = learn_fand_heuristic(&Sample::from_strs(&["ab", "cab"], &["ba"]));
        assert_eq!(r, LearnResult::found(p("F (a & F b)")));
        assert_eq!(learn_fand_heuristic(&Sample::from_strs(&["a"], &["b"])), LearnResult::found(p("a")));
        assert_eq!(learn_fand_heuristic(&Sample::from_strs(&["ab"], &["aab"])), LearnResult::NoSeparatorExists);
    }
}
