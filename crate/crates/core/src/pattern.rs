//! Patterns, the normal form of `LTL(X, and)`, and the greedy learner.
//!
//! A pattern pins letter `c_q` at position `p_q` for strictly increasing
//! positions. Its formula is `X^{p_1-1}(c_1 & X^{p_2-p_1}(c_2 & ...))`, of
//! size `last + 2 * (width - 1)`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{satisfies, Formula, Operator, OperatorSet, Symbol};
use crate::sample::{separates, Sample};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("a pattern needs at least one position")]
    Empty,
    #[error("{positions} positions but {letters} letters")]
    LengthMismatch { positions: usize, letters: usize },
    #[error("positions must be strictly increasing and start at 1 or later")]
    NotIncreasing,
    #[error("formula uses {0:?}, outside X and and")]
    OutsideFragment(Operator),
    #[error("true has no pattern form")]
    ConstantTrue,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Pattern {
    positions: Vec<usize>,
    letters: Vec<Symbol>,
}

impl Pattern {
    pub fn new(positions: Vec<usize>, letters: Vec<Symbol>) -> Result<Self, PatternError> {
        if positions.is_empty() {
            return Err(PatternError::Empty);
        }
        if positions.len() != letters.len() {
            return Err(PatternError::LengthMismatch { positions: positions.len(), letters: letters.len() });
        }
        if positions[0] == 0 || positions.windows(2).any(|p| p[0] >= p[1]) {
            return Err(PatternError::NotIncreasing);
        }
        Ok(Pattern { positions, letters })
    }

    /// Positions in increasing order, 1-based.
    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn letters(&self) -> &[Symbol] {
        &self.letters
    }

    pub fn width(&self) -> usize {
        self.positions.len()
    }

    pub fn last(&self) -> usize {
        *self.positions.last().expect("patterns are non-empty")
    }

    pub fn size(&self) -> usize {
        self.last() + 2 * (self.width() - 1)
    }

    pub fn to_formula(&self) -> Formula {
        let mut acc: Option<Formula> = None;
        for q in (0..self.width()).rev() {
            let here = Formula::Letter(self.letters[q].clone());
            let body = match acc {
                None => here,
                Some(rest) => Formula::and(here, Formula::next_n(self.positions[q + 1] - self.positions[q], rest)),
            };
            acc = Some(body);
        }
        Formula::next_n(self.positions[0] - 1, acc.expect("patterns are non-empty"))
    }

    /// Direct check: every pinned position exists and holds its letter.
    pub fn matches(&self, w: &[Symbol]) -> bool {
        self.positions.iter().zip(&self.letters).all(|(&p, c)| w.get(p - 1) == Some(c))
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.positions.iter().zip(&self.letters).map(|(p, c)| format!("{p}:{c}")).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PatternForm {
    Pattern(Pattern),
    /// Two constraints pin different letters to one position.
    Unsatisfiable,
}

/// Equivalent pattern of an `LTL(X, and)` formula, never larger than it.
pub fn normalize_to_pattern(phi: &Formula) -> Result<PatternForm, PatternError> {
    fn collect(
        f: &Formula,
        offset: usize,
        out: &mut Vec<(usize, Symbol)>,
        falsum: &mut bool,
    ) -> Result<(), PatternError> {
        match f {
            Formula::Letter(c) => out.push((offset + 1, c.clone())),
            Formula::False => *falsum = true,
            Formula::True => return Err(PatternError::ConstantTrue),
            Formula::Next(g) => collect(g, offset + 1, out, falsum)?,
            Formula::And(l, r) => {
                collect(l, offset, out, falsum)?;
                collect(r, offset, out, falsum)?;
            }
            other => {
                return Err(PatternError::OutsideFragment(other.operator().expect("non-atomic formula")));
            }
        }
        Ok(())
    }
    let mut pins = Vec::new();
    let mut falsum = false;
    collect(phi, 0, &mut pins, &mut falsum)?;
    if falsum {
        return Ok(PatternForm::Unsatisfiable);
    }
    let mut by_pos: BTreeMap<usize, Symbol> = BTreeMap::new();
    for (p, c) in pins {
        match by_pos.get(&p) {
            Some(d) if *d != c => return Ok(PatternForm::Unsatisfiable),
            _ => {
                by_pos.insert(p, c);
            }
        }
    }
    let (positions, letters) = by_pos.into_iter().unzip();
    Ok(PatternForm::Pattern(Pattern::new(positions, letters)?))
}

/// Greedy set-cover learner for `LTL(X, and)`.
///
/// `X` holds the positions (up to the shortest positive length) where all
/// positive words agree; position `i` kills negative `j` when `v_j` is
/// shorter than `i` or carries another letter there. For each candidate
/// last position the remaining negatives are covered greedily by positions
/// before it, picking the largest gain (smallest position on ties). The
/// smallest pattern over all last positions wins, ties going to the
/// earliest last position.
///
/// Returns `None` when no pattern separates, and for samples without
/// positive words.
pub fn greedy_approx_xand(s: &Sample) -> Option<Pattern> {
    let s = s.deduplicated();
    let pos = s.positive();
    let neg = s.negative();
    let shortest = pos.iter().map(|u| u.len()).min()?;
    if s.has_overlap() {
        return None;
    }

    // agreement positions with their common letter, 1-based
    let agree: Vec<(usize, Symbol)> = (1..=shortest)
        .filter_map(|i| {
            let c = &pos[0][i - 1];
            pos.iter().all(|u| &u[i - 1] == c).then(|| (i, c.clone()))
        })
        .collect();
    if neg.is_empty() {
        let (i, c) = agree.first()?;
        return Some(Pattern::new(vec![*i], vec![c.clone()]).expect("single position"));
    }

    let n = neg.len();
    let words = n.div_ceil(64);
    let kills: Vec<Vec<u64>> = agree
        .iter()
        .map(|(i, c)| {
            let mut y = vec![0u64; words];
            for (j, v) in neg.iter().enumerate() {
                if v.len() < *i || &v[i - 1] != c {
                    y[j / 64] |= 1 << (j % 64);
                }
            }
            y
        })
        .collect();
    let full: Vec<u64> = (0..words)
        .map(|k| if k + 1 < words || n.is_multiple_of(64) { u64::MAX } else { (1u64 << (n % 64)) - 1 })
        .collect();
    let gain = |y: &[u64], covered: &[u64]| -> u32 { y.iter().zip(covered).map(|(a, b)| (a & !b).count_ones()).sum() };

    let mut best: Option<(usize, Vec<usize>)> = None;
    for last in 0..agree.len() {
        let mut covered = kills[last].clone();
        let mut chosen = vec![last];
        while covered != full {
            let pick = (0..last)
                .filter(|k| !chosen.contains(k))
                .map(|k| (gain(&kills[k], &covered), k))
                .filter(|&(g, _)| g > 0)
                .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
            let Some((_, k)) = pick else { break };
            for (c, y) in covered.iter_mut().zip(&kills[k]) {
                *c |= y;
            }
            chosen.push(k);
        }
        if covered != full {
            continue;
        }
        let size = agree[last].0 + 2 * (chosen.len() - 1);
        if best.as_ref().is_none_or(|(b, _)| size < *b) {
            best = Some((size, chosen));
        }
    }
    let (_, mut chosen) = best?;
    chosen.sort_unstable();
    let positions = chosen.iter().map(|&k| agree[k].0).collect();
    let letters = chosen.iter().map(|&k| agree[k].1.clone()).collect();
    Some(Pattern::new(positions, letters).expect("agreement positions are increasing"))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RemoveOrError {
    #[error("the sample must have exactly one positive word, found {0}")]
    NotSinglePositive(usize),
    #[error("the formula does not separate the sample")]
    NotSeparating,
    #[error("operator {0:?} is not supported; allowed are X, F, and, or")]
    Unsupported(Operator),
}

/// A disjunction-free separator no larger than `phi`, for a sample with one
/// positive word.
///
/// Each disjunction is resolved to a disjunct that still separates; a
/// conjunction splits the negatives between its two sides; `X` and `F`
/// move to the suffixes where the positive word is still accepted.
pub fn remove_disjunctions(phi: &Formula, s: &Sample) -> Result<Formula, RemoveOrError> {
    let s = s.deduplicated();
    if s.positive().len() != 1 {
        return Err(RemoveOrError::NotSinglePositive(s.positive().len()));
    }
    let allowed = OperatorSet::of(&[Operator::Next, Operator::Eventually, Operator::And, Operator::Or]);
    if let Some(op) = phi.operators().iter().find(|op| !allowed.contains(*op)) {
        return Err(RemoveOrError::Unsupported(op));
    }
    if !separates(phi, &s) {
        return Err(RemoveOrError::NotSeparating);
    }
    let negs: Vec<&[Symbol]> = s.negative().iter().map(|v| v.letters()).collect();
    Ok(choose(phi, s.positive()[0].letters(), &negs))
}

/// `phi` accepts `u` and rejects every word of `negs`, all non-empty.
fn choose(phi: &Formula, u: &[Symbol], negs: &[&[Symbol]]) -> Formula {
    let rejects_all = |f: &Formula, ws: &[&[Symbol]]| ws.iter().all(|v| !satisfies(f, v));
    match phi {
        Formula::And(l, r) => {
            let (left, right): (Vec<&[Symbol]>, Vec<&[Symbol]>) = negs.iter().partition(|v| !satisfies(l, v));
            Formula::and(choose(l, u, &left), choose(r, u, &right))
        }
        Formula::Or(l, r) => {
            if satisfies(l, u) && rejects_all(l, negs) {
                choose(l, u, negs)
            } else {
                choose(r, u, negs)
            }
        }
        Formula::Next(g) => {
            let tails: Vec<&[Symbol]> = negs.iter().filter(|v| v.len() > 1).map(|v| &v[1..]).collect();
            Formula::next(choose(g, &u[1..], &tails))
        }
        Formula::Eventually(g) => {
            let start = (0..u.len()).find(|&p| satisfies(g, &u[p..])).expect("u satisfies F g");
            let tails: Vec<&[Symbol]> = negs.iter().flat_map(|v| (0..v.len()).map(move |q| &v[q..])).collect();
            Formula::eventually(choose(g, &u[start..], &tails))
        }
        other => other.clone(),
    }
}
