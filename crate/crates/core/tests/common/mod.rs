//! Test-only oracles: a definition-level evaluator, brute-force formula
//! enumeration without pruning, and random generators.
#![allow(dead_code)]

use ltl_learn::{Formula, Operator, OperatorSet, Sample, Symbol, Word};
use rand::Rng;

pub fn syms(letters: &str) -> Vec<Symbol> {
    letters.chars().map(|c| Symbol::new(&c.to_string()).unwrap()).collect()
}

pub fn ops(list: &str) -> OperatorSet {
    OperatorSet::parse(list).unwrap()
}

/// `w[i..] |= phi` straight from the quantifier definitions (0-based `i`).
pub fn naive_sat(phi: &Formula, w: &[Symbol], i: usize) -> bool {
    i < w.len() && naive_row(phi, w)[i]
}

/// Truth value of `phi` at every position of `w`. Each operator reads the
/// rows of its operands through its quantifier definition, so long nested
/// chains stay polynomial.
pub fn naive_row(phi: &Formula, w: &[Symbol]) -> Vec<bool> {
    let n = w.len();
    let at = |row: &[bool], j: usize| j < n && row[j];
    match phi {
        Formula::True => vec![true; n],
        Formula::False => vec![false; n],
        Formula::Letter(a) => w.iter().map(|x| x == a).collect(),
        Formula::NegLetter(a) => w.iter().map(|x| x != a).collect(),
        Formula::Next(f) => {
            let r = naive_row(f, w);
            (0..n).map(|i| at(&r, i + 1)).collect()
        }
        Formula::Eventually(f) => {
            let r = naive_row(f, w);
            (0..n).map(|i| (i..n).any(|j| r[j])).collect()
        }
        Formula::Globally(f) => {
            let r = naive_row(f, w);
            (0..n).map(|i| (i..n).all(|j| r[j])).collect()
        }
        Formula::Until(l, r) => {
            let (lr, rr) = (naive_row(l, w), naive_row(r, w));
            (0..n).map(|i| (i..n).any(|j| rr[j] && (i..j).all(|k| lr[k]))).collect()
        }
        Formula::And(l, r) => naive_row(l, w).iter().zip(naive_row(r, w)).map(|(a, b)| *a && b).collect(),
        Formula::Or(l, r) => naive_row(l, w).iter().zip(naive_row(r, w)).map(|(a, b)| *a || b).collect(),
    }
}

pub fn naive_separates(phi: &Formula, s: &Sample) -> bool {
    s.positive().iter().all(|u| naive_sat(phi, u, 0)) && s.negative().iter().all(|v| !naive_sat(phi, v, 0))
}

/// All words of length `1..=max_len`.
pub fn words_upto(letters: &[Symbol], max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<Symbol>> = vec![vec![]];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| letters.iter().map(move |a| w.iter().cloned().chain([a.clone()]).collect()))
            .collect();
        out.extend(layer.iter().cloned().map(Word::new));
    }
    out
}

/// Every formula of `LTL(ops)` up to `max_size`, grouped by size, without
/// any pruning or symmetry breaking. Constants are left out, as in the
/// learners.
pub fn all_formulas(letters: &[Symbol], ops: OperatorSet, max_size: usize) -> Vec<Vec<Formula>> {
    let mut by_size: Vec<Vec<Formula>> = vec![vec![]; max_size + 1];
    for size in 1..=max_size {
        let mut layer = Vec::new();
        if size == 1 {
            layer.extend(letters.iter().map(Formula::letter));
        }
        if size == 2 && ops.contains(Operator::Not) {
            layer.extend(letters.iter().map(Formula::neg_letter));
        }
        if size >= 2 {
            for f in &by_size[size - 1] {
                if ops.contains(Operator::Next) {
                    layer.push(Formula::next(f.clone()));
                }
                if ops.contains(Operator::Eventually) {
                    layer.push(Formula::eventually(f.clone()));
                }
                if ops.contains(Operator::Globally) {
                    layer.push(Formula::globally(f.clone()));
                }
            }
        }
        if size >= 3 {
            for ls in 1..size - 1 {
                let rs = size - 1 - ls;
                for l in &by_size[ls] {
                    for r in &by_size[rs] {
                        if ops.contains(Operator::And) {
                            layer.push(Formula::and(l.clone(), r.clone()));
                        }
                        if ops.contains(Operator::Or) {
                            layer.push(Formula::or(l.clone(), r.clone()));
                        }
                        if ops.contains(Operator::Until) {
                            layer.push(Formula::until(l.clone(), r.clone()));
                        }
                    }
                }
            }
        }
        by_size[size] = layer;
    }
    by_size
}

/// Minimal separator size by brute force, `None` if none up to `max_size`.
pub fn brute_min_size(s: &Sample, formulas: &[Vec<Formula>]) -> Option<usize> {
    if s.negative().is_empty() || s.positive().is_empty() {
        return Some(1);
    }
    formulas.iter().enumerate().skip(1).find(|(_, layer)| layer.iter().any(|f| naive_separates(f, s))).map(|(k, _)| k)
}

/// Random formula of size at most `budget` over `letters` and `ops`.
pub fn random_formula(rng: &mut impl Rng, letters: &[Symbol], ops: OperatorSet, budget: usize) -> Formula {
    let unary: Vec<Operator> = [Operator::Next, Operator::Eventually, Operator::Globally]
        .into_iter()
        .filter(|o| ops.contains(*o))
        .collect();
    let binary: Vec<Operator> =
        [Operator::And, Operator::Or, Operator::Until].into_iter().filter(|o| ops.contains(*o)).collect();
    let leaf = |rng: &mut dyn rand::RngCore| {
        let a = &letters[rng.gen_range(0..letters.len())];
        if budget >= 2 && ops.contains(Operator::Not) && rng.gen_bool(0.3) {
            Formula::neg_letter(a)
        } else {
            Formula::letter(a)
        }
    };
    let roll = rng.gen_range(0..3);
    if budget <= 1 || roll == 0 || (unary.is_empty() && (binary.is_empty() || budget < 3)) {
        return leaf(rng);
    }
    if roll == 2 && budget >= 3 && !binary.is_empty() {
        let left_budget = rng.gen_range(1..=budget - 2);
        let l = random_formula(rng, letters, ops, left_budget);
        let r = random_formula(rng, letters, ops, budget - 1 - l.size());
        return match binary[rng.gen_range(0..binary.len())] {
            Operator::And => Formula::and(l, r),
            Operator::Or => Formula::or(l, r),
            _ => Formula::until(l, r),
        };
    }
    if unary.is_empty() {
        return leaf(rng);
    }
    let inner = random_formula(rng, letters, ops, budget - 1);
    match unary[rng.gen_range(0..unary.len())] {
        Operator::Next => Formula::next(inner),
        Operator::Eventually => Formula::eventually(inner),
        _ => Formula::globally(inner),
    }
}

pub fn random_word(rng: &mut impl Rng, letters: &[Symbol], min_len: usize, max_len: usize) -> Word {
    let len = rng.gen_range(min_len..=max_len);
    Word::new((0..len).map(|_| letters[rng.gen_range(0..letters.len())].clone()).collect())
}

/// Every sample with `1..=max_side` distinct words per side drawn from
/// `words`, the two sides disjoint, over a fixed alphabet.
pub fn sample_grid(alphabet: &[Symbol], words: &[Word], max_side: usize) -> Vec<Sample> {
    let subsets = |pool: &[usize]| -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for r in 1..=max_side {
            out.extend(itertools::Itertools::combinations(pool.iter().copied(), r));
        }
        out
    };
    let all: Vec<usize> = (0..words.len()).collect();
    let mut samples = Vec::new();
    for p in subsets(&all) {
        let rest: Vec<usize> = all.iter().copied().filter(|i| !p.contains(i)).collect();
        for n in subsets(&rest) {
            let pick = |ix: &[usize]| ix.iter().map(|&i| words[i].clone()).collect();
            samples.push(Sample::new(alphabet.to_vec(), pick(&p), pick(&n)).unwrap());
        }
    }
    samples
}

/// Smallest separating pattern by trying every set of agreement positions.
pub fn brute_pattern_size(s: &Sample) -> Option<usize> {
    let min_len = s.positive().iter().map(|u| u.len()).min()?;
    let u0 = &s.positive()[0];
    let agree: Vec<usize> = (0..min_len).filter(|&i| s.positive().iter().all(|u| u[i] == u0[i])).collect();
    let mut best: Option<usize> = None;
    for mask in 1u32..1 << agree.len() {
        let chosen: Vec<usize> = (0..agree.len()).filter(|b| mask >> b & 1 == 1).map(|b| agree[b]).collect();
        let rejects = |v: &Word| chosen.iter().any(|&i| i >= v.len() || v[i] != u0[i]);
        if s.negative().iter().all(rejects) {
            let size = chosen.last().unwrap() + 1 + 2 * (chosen.len() - 1);
            best = Some(best.map_or(size, |b| b.min(size)));
        }
    }
    best
}
