//! Shortest-formula learners for the degenerate fragments and the
//! constructive polynomial-size separators.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::fattern::{f_chain, g_chain, learn_fand_heuristic};
use crate::formula::{dualize, in_fragment, Formula, Operator, OperatorSet, Symbol, Word};
use crate::sample::{collapse_runs, is_weak_subword, separates, LearnResult, Sample};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DegenerateError {
    #[error("operators {given} are outside {allowed}")]
    OperatorsOutside { given: OperatorSet, allowed: OperatorSet },
    #[error("no constructive separator for operators {0}")]
    NoConstruction(OperatorSet),
    #[error("alphabet has {size} letters, more than the limit of {limit}")]
    AlphabetTooLarge { size: usize, limit: usize },
}

/// Default alphabet limit of [`learn_for_fixed`].
pub const FOR_ALPHABET_LIMIT: usize = 8;

fn require_subset(ops: OperatorSet, allowed: OperatorSet) -> Result<(), DegenerateError> {
    if ops.is_subset(allowed) {
        Ok(())
    } else {
        Err(DegenerateError::OperatorsOutside { given: ops, allowed })
    }
}

/// `true` without negatives, `false` without positives.
fn trivial(s: &Sample) -> Option<LearnResult> {
    if s.has_overlap() {
        Some(LearnResult::NoSeparatorExists)
    } else if s.negative().is_empty() {
        Some(LearnResult::found(Formula::True))
    } else if s.positive().is_empty() {
        Some(LearnResult::found(Formula::False))
    } else {
        None
    }
}

/// First element of `candidates` (scanned in formula order) that separates.
fn first_separator(s: &Sample, mut candidates: Vec<Formula>) -> LearnResult {
    candidates.sort();
    candidates
        .into_iter()
        .find(|f| separates(f, s))
        .map_or(LearnResult::NoSeparatorExists, LearnResult::found)
}

/// `Op ⊆ {and, or}`: only first letters matter. With `or` the disjunction of
/// the positives' first letters is minimal; without it a single letter is
/// the only candidate.
pub fn learn_bool(s: &Sample, ops: OperatorSet) -> Result<LearnResult, DegenerateError> {
    require_subset(ops, OperatorSet::of(&[Operator::And, Operator::Or]))?;
    if let Some(r) = trivial(s) {
        return Ok(r);
    }
    let firsts: BTreeSet<&Symbol> = s.positive().iter().map(|u| &u[0]).collect();
    if s.negative().iter().any(|v| firsts.contains(&v[0])) {
        return Ok(LearnResult::NoSeparatorExists);
    }
    if firsts.len() > 1 && !ops.contains(Operator::Or) {
        return Ok(LearnResult::NoSeparatorExists);
    }
    Ok(LearnResult::found(Formula::disjunction(firsts.into_iter().map(Formula::letter))))
}

/// `Op ⊆ {F, G, X}`: scans `true`, `false`, `X^k a`, `X^k F a`, `X^k G a`,
/// `X^k F G a` for `k` below the longest word length, restricted to `Op`.
pub fn learn_unary(s: &Sample, ops: OperatorSet) -> Result<LearnResult, DegenerateError> {
    require_subset(ops, OperatorSet::of(&[Operator::Eventually, Operator::Globally, Operator::Next]))?;
    if let Some(r) = trivial(s) {
        return Ok(r);
    }
    let has = |op| ops.contains(op);
    let max_k = if has(Operator::Next) { s.max_len() } else { 1 };
    let mut family = Vec::new();
    for a in s.alphabet() {
        let bodies = [
            Some(Formula::letter(a)),
            has(Operator::Eventually).then(|| Formula::eventually(Formula::letter(a))),
            has(Operator::Globally).then(|| Formula::globally(Formula::letter(a))),
            (has(Operator::Eventually) && has(Operator::Globally))
                .then(|| Formula::eventually(Formula::globally(Formula::letter(a)))),
        ];
        for body in bodies.into_iter().flatten() {
            for k in 0..max_k {
                family.push(Formula::next_n(k, body.clone()));
            }
        }
    }
    Ok(first_separator(s, family))
}

/// `Op = {G, and}`: every formula is equivalent to `true`, `false`, `a` or
/// `G a`.
pub fn learn_gand(s: &Sample) -> LearnResult {
    if let Some(r) = trivial(s) {
        return r;
    }
    let family = s
        .alphabet()
        .iter()
        .flat_map(|a| [Formula::letter(a), Formula::globally(Formula::letter(a))])
        .collect();
    first_separator(s, family)
}

/// `Op = {F, or}` over a small fixed alphabet. Every formula is equivalent
/// to `a_1 | ... | a_p | F(b_1 | ... | b_q)`, of size `2p + 2q - 1 + [q > 0]`;
/// all letter sets are tried and the smallest separator kept.
pub fn learn_for_fixed(s: &Sample, alphabet_limit: usize) -> Result<LearnResult, DegenerateError> {
    let sigma = s.alphabet();
    if sigma.len() > alphabet_limit {
        return Err(DegenerateError::AlphabetTooLarge { size: sigma.len(), limit: alphabet_limit });
    }
    if let Some(r) = trivial(s) {
        return Ok(r);
    }
    let s = s.deduplicated();
    // letters usable at the first position / under F: no negative may satisfy them
    let first_ok: Vec<bool> = sigma.iter().map(|a| s.negative().iter().all(|v| &v[0] != a)).collect();
    let later_ok: Vec<bool> = sigma.iter().map(|a| s.negative().iter().all(|v| !v.contains(a))).collect();
    let n = sigma.len();
    let covers = |amask: u32, bmask: u32, u: &Word| {
        (0..n).any(|i| amask >> i & 1 == 1 && u[0] == sigma[i]) || (0..n).any(|i| bmask >> i & 1 == 1 && u.contains(&sigma[i]))
    };
    let mut best: Option<(usize, Formula)> = None;
    for amask in 0u32..1 << n {
        if (0..n).any(|i| amask >> i & 1 == 1 && !first_ok[i]) {
            continue;
        }
        for bmask in 0u32..1 << n {
            if amask & bmask != 0 || (0..n).any(|i| bmask >> i & 1 == 1 && !later_ok[i]) {
                continue;
            }
            let (p, q) = (amask.count_ones() as usize, bmask.count_ones() as usize);
            if p + q == 0 {
                continue;
            }
            let size = 2 * p + 2 * q - 1 + usize::from(q > 0);
            if best.as_ref().is_some_and(|(b, _)| size > *b) {
                continue;
            }
            if !s.positive().iter().all(|u| covers(amask, bmask, u)) {
                continue;
            }
            let pick = |mask: u32| (0..n).filter(move |i| mask >> i & 1 == 1).map(|i| Formula::letter(&sigma[i]));
            let mut parts: Vec<Formula> = pick(amask).collect();
            if q > 0 {
                parts.push(Formula::eventually(Formula::disjunction(pick(bmask))));
            }
            let f = Formula::disjunction(parts);
            debug_assert_eq!(f.size(), size);
            match &best {
                Some((b, g)) if *b == size && *g <= f => {}
                _ => best = Some((size, f)),
            }
        }
    }
    Ok(best.map_or(LearnResult::NoSeparatorExists, |(_, f)| LearnResult::found(f)))
}

/// `X^0 a_1 & X^1 a_2 & ... & X^{m-1} a_m`, with `G` on the last letter when
/// `globally_last`.
fn prefix_formula(u: &[Symbol], globally_last: bool) -> Formula {
    let m = u.len();
    Formula::conjunction(u.iter().enumerate().map(|(j, a)| {
        let atom = Formula::letter(a);
        let atom = if globally_last && j + 1 == m { Formula::globally(atom) } else { atom };
        Formula::next_n(j, atom)
    }))
}

/// `a̅`: disjunction of the other letters of the alphabet.
fn bar(a: &Symbol, sigma: &[Symbol]) -> Formula {
    Formula::disjunction(sigma.iter().filter(|b| *b != a).map(Formula::letter))
}

/// Replaces every `!a` by the disjunction of the other letters.
fn unbar(f: &Formula, sigma: &[Symbol]) -> Formula {
    match f {
        Formula::NegLetter(a) => bar(a, sigma),
        Formula::Next(g) => Formula::next(unbar(g, sigma)),
        Formula::Eventually(g) => Formula::eventually(unbar(g, sigma)),
        Formula::Globally(g) => Formula::globally(unbar(g, sigma)),
        Formula::Until(l, r) => Formula::until(unbar(l, sigma), unbar(r, sigma)),
        Formula::And(l, r) => Formula::and(unbar(l, sigma), unbar(r, sigma)),
        Formula::Or(l, r) => Formula::or(unbar(l, sigma), unbar(r, sigma)),
        other => other.clone(),
    }
}

/// `{F, and, or}` separator. Each negative `v` is excluded by a fattern
/// shared by all positives when there is one; otherwise by the disjunction
/// over positives `u` of `u`'s first letter (if `v` starts differently) or
/// of `u`'s own word chain (if `u` is not a weak subword of `v`). A positive
/// with neither satisfies every formula of the fragment that `v` falsifies.
fn fandor_separator(s: &Sample) -> LearnResult {
    let all = learn_fand_heuristic(s);
    if all.formula().is_some() || s.negative().is_empty() || s.positive().is_empty() {
        return all;
    }
    let mut conj = Vec::new();
    for v in s.negative() {
        let one = Sample::new(s.alphabet().to_vec(), s.positive().to_vec(), vec![v.clone()]).expect("sub-sample of a valid sample");
        if let LearnResult::Found { formula, .. } = learn_fand_heuristic(&one) {
            conj.push(formula);
            continue;
        }
        let mut disj = Vec::new();
        for u in s.positive() {
            if u[0] != v[0] {
                disj.push(Formula::letter(&u[0]));
            } else if !is_weak_subword(u, v) {
                disj.push(f_chain(&collapse_runs(u).iter().map(Formula::letter).collect::<Vec<_>>()));
            } else {
                return LearnResult::NoSeparatorExists;
            }
        }
        disj.sort();
        disj.dedup();
        conj.push(Formula::disjunction(disj));
    }
    LearnResult::found(Formula::conjunction(conj))
}

/// Which constructive separator applies to an operator set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Construction {
    /// `{G, X, and, or} ⊆ Op`: one prefix-then-`G` formula per positive word.
    GloballyNext,
    /// `{X, and, or} ⊆ Op ⊆ {F, X, and, or}`: one prefix formula per positive.
    Prefix,
    /// `Op = {F, and}`: one fattern (or first letter) per negative.
    EventuallyAnd,
    /// `Op = {F, and, or}`: as above, falling back to a disjunction over the
    /// positives for negatives no single fattern excludes.
    EventuallyAndOr,
    /// `Op = {G, and, or}`: dual of the previous on the swapped sample. Without
    /// `and` the dual fragment cannot express negated letters, so `{G, or}`
    /// has no construction here.
    GloballyOr,
    /// `Op = {F, G, and, or}`: weak-subword formulas per pair of words.
    EventuallyGlobally,
}

impl Construction {
    pub fn for_operators(ops: OperatorSet) -> Option<Construction> {
        let set = |s: &str| OperatorSet::parse(s).expect("static operator list");
        if set("G,X,and,or").is_subset(ops) && ops.is_subset(OperatorSet::full_without_until()) {
            Some(Construction::GloballyNext)
        } else if set("X,and,or").is_subset(ops) && ops.is_subset(set("F,X,and,or")) {
            Some(Construction::Prefix)
        } else if ops == set("F,and") {
            Some(Construction::EventuallyAnd)
        } else if ops == set("F,and,or") {
            Some(Construction::EventuallyAndOr)
        } else if ops == set("G,and,or") {
            Some(Construction::GloballyOr)
        } else if ops == set("F,G,and,or") {
            Some(Construction::EventuallyGlobally)
        } else {
            None
        }
    }
}

/// Polynomial-size separator for the fragments with a known construction,
/// or `NoSeparatorExists` under the construction's obstruction.
pub fn construct_separator(s: &Sample, ops: OperatorSet) -> Result<LearnResult, DegenerateError> {
    let construction = Construction::for_operators(ops).ok_or(DegenerateError::NoConstruction(ops))?;
    if let Some(r) = trivial(s) {
        return Ok(r);
    }
    let s = s.deduplicated();
    let sigma = s.alphabet();
    let result = match construction {
        Construction::GloballyNext => {
            // v ∈ u a* with a the last letter of u: v satisfies everything u does
            let blocked = s.positive().iter().any(|u| {
                let a = u.last().expect("non-empty");
                s.negative().iter().any(|v| v.len() >= u.len() && v.starts_with(u) && v[u.len()..].iter().all(|c| c == a))
            });
            if blocked {
                LearnResult::NoSeparatorExists
            } else {
                LearnResult::found(Formula::disjunction(s.positive().iter().map(|u| prefix_formula(u, true))))
            }
        }
        Construction::Prefix => {
            let blocked = s.positive().iter().any(|u| s.negative().iter().any(|v| v.starts_with(u)));
            if blocked {
                LearnResult::NoSeparatorExists
            } else {
                LearnResult::found(Formula::disjunction(s.positive().iter().map(|u| prefix_formula(u, false))))
            }
        }
        Construction::EventuallyAnd => learn_fand_heuristic(&s),
        Construction::EventuallyAndOr => fandor_separator(&s),
        Construction::GloballyOr => match fandor_separator(&s.swapped()) {
            LearnResult::Found { formula, .. } => {
                let dual = dualize(&formula).expect("F/and formulas dualize");
                LearnResult::found(unbar(&dual, sigma))
            }
            other => other,
        },
        Construction::EventuallyGlobally => {
            // u ⊨ φ(u) & φ(v) needs v not a weak subword of u; when it is, φ(u)
            // alone rejects v unless u is also a weak subword of v
            let mut disjuncts = Vec::new();
            for u in s.positive() {
                let mut conj = vec![f_chain(&u.iter().map(Formula::letter).collect::<Vec<_>>())];
                for v in s.negative() {
                    let v_in_u = is_weak_subword(v, u);
                    if v_in_u && is_weak_subword(u, v) {
                        return Ok(LearnResult::NoSeparatorExists);
                    }
                    if !v_in_u {
                        // words without v as a weak subword
                        conj.push(g_chain(&v.iter().map(|a| bar(a, sigma)).collect::<Vec<_>>()));
                    }
                }
                disjuncts.push(Formula::conjunction(conj));
            }
            LearnResult::found(Formula::disjunction(disjuncts))
        }
    };
    if let LearnResult::Found { formula, .. } = &result {
        debug_assert!(separates(formula, &s), "construction {construction:?} failed on {s:?}");
        debug_assert!(in_fragment(formula, ops));
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    fn ops(s: &str) -> OperatorSet {
        OperatorSet::parse(s).unwrap()
    }

    fn found(f: &str) -> LearnResult {
        LearnResult::found(parse(f).unwrap())
    }

    #[test]
    fn boolean_fragment() {
        let s = Sample::from_strs(&["ab"], &["ba"]);
        assert_eq!(learn_bool(&s, ops("and,or")).unwrap(), found("a"));
        let s = Sample::from_strs(&["ab", "bb"], &["cb"]);
        assert_eq!(learn_bool(&s, ops("or,and")).unwrap(), found("(a | b)"));
        assert_eq!(learn_bool(&s, ops("and")).unwrap(), LearnResult::NoSeparatorExists);
        let s = Sample::from_strs(&["ab"], &["ac"]);
        assert_eq!(learn_bool(&s, ops("and,or")).unwrap(), LearnResult::NoSeparatorExists);
        assert!(learn_bool(&s, ops("F")).is_err());
    }

    #[test]
    fn unary_fragment() {
        let s = Sample::from_strs(&["ba"], &["bb"]);
        assert_eq!(learn_unary(&s, ops("F,X")).unwrap(), found("X a"));
        let s = Sample::from_strs(&["aa"], &["ab"]);
        assert_eq!(learn_unary(&s, ops("G")).unwrap(), found("G a"));
        let s = Sample::from_strs(&["ab"], &["a"]);
        assert_eq!(learn_unary(&s, ops("G")).unwrap(), LearnResult::NoSeparatorExists);
    }

    #[test]
    fn g_and_fragment() {
        assert_eq!(learn_gand(&Sample::from_strs(&["ab"], &["bb"])), found("a"));
        assert_eq!(learn_gand(&Sample::from_strs(&["aa"], &["ab"])), found("G a"));
        assert_eq!(learn_gand(&Sample::from_strs(&["ab"], &["ac"])), LearnResult::NoSeparatorExists);
    }

    #[test]
    fn f_or_fragment() {
        let s = Sample::from_strs(&["ba"], &["bb"]);
        assert_eq!(learn_for_fixed(&s, 8).unwrap(), found("F a"));
        let s = Sample::from_strs(&["ab", "ba"], &["bb"]);
        assert_eq!(learn_for_fixed(&s, 8).unwrap(), found("F a"));
        let s = Sample::from_strs(&["ab"], &["aab"]);
        assert_eq!(learn_for_fixed(&s, 8).unwrap(), LearnResult::NoSeparatorExists);
        let s = Sample::from_strs(&["ca", "db"], &["cc", "dd"]);
        assert_eq!(learn_for_fixed(&s, 8).unwrap(), found("F (a | b)"));
        assert!(matches!(learn_for_fixed(&s, 3), Err(DegenerateError::AlphabetTooLarge { .. })));
    }

    #[test]
    fn construction_obstructions() {
        let s = Sample::from_strs(&["ab"], &["abbb"]);
        assert_eq!(construct_separator(&s, ops("G,X,and,or")).unwrap(), LearnResult::NoSeparatorExists);
        let s = Sample::from_strs(&["ab"], &["aba"]);
        assert_eq!(construct_separator(&s, ops("X,and,or")).unwrap(), LearnResult::NoSeparatorExists);
        let s = Sample::from_strs(&["ab"], &["aab"]);
        assert_eq!(construct_separator(&s, ops("F,G,and,or")).unwrap(), LearnResult::NoSeparatorExists);
        assert!(construct_separator(&s, ops("X,and")).is_err());
    }

    #[test]
    fn constructions_separate() {
        let cases = [
            ("G,X,and,or", Sample::from_strs(&["ab", "ba"], &["aba", "bb"])),
            ("X,and,or", Sample::from_strs(&["ab", "ba"], &["bb", "a"])),
            ("F,X,and,or", Sample::from_strs(&["abc"], &["ab", "cab"])),
            ("F,and", Sample::from_strs(&["abc", "bac"], &["cab", "ab"])),
            ("F,and,or", Sample::from_strs(&["abc", "bac"], &["cab", "ab"])),
            ("G,and,or", Sample::from_strs(&["cab", "ab"], &["abc", "bac"])),
            ("F,G,and,or", Sample::from_strs(&["ab"], &["ba"])),
            ("F,G,and,or", Sample::from_strs(&["abc", "b"], &["ab", "bca"])),
        ];
        for (o, s) in cases {
            let r = construct_separator(&s, ops(o)).unwrap();
            let f = r.formula().unwrap_or_else(|| panic!("{o}: {r:?}"));
            assert!(separates(f, &s), "{o}: {f}");
            assert!(in_fragment(f, ops(o)), "{o}: {f}");
        }
    }

    #[test]
    fn disjunction_of_first_letters_needed() {
        // no fattern shared by the positives excludes "bbc", but a | c does
        let s = Sample::from_strs(&["aabc", "cbcc", "ccab"], &["a", "bbc"]);
        assert_eq!(construct_separator(&s, ops("F,and")).unwrap(), LearnResult::NoSeparatorExists);
        let f = construct_separator(&s, ops("F,and,or")).unwrap();
        assert!(separates(f.formula().unwrap(), &s));
        let g = construct_separator(&s.swapped(), ops("G,and,or")).unwrap();
        assert!(separates(g.formula().unwrap(), &s.swapped()));
        let s = Sample::from_strs(&["ab", "ca"], &["acb"]);
        assert_eq!(construct_separator(&s, ops("F,and,or")).unwrap(), LearnResult::NoSeparatorExists);
    }

    #[test]
    fn fg_pair_with_one_sided_subword() {
        // v is a weak subword of u but not conversely: φ(u) alone rejects v
        let s = Sample::from_strs(&["ab"], &["a"]);
        let r = construct_separator(&s, ops("F,G,and,or")).unwrap();
        assert_eq!(r, found("F (a & F b)"));
    }
}
