//! Subword and weak-subword combinatorics.

use std::collections::{HashSet, VecDeque};

use crate::formula::Symbol;

/// Strict embedding: `u(1..)` maps to strictly increasing positions of `w`.
pub fn is_subword(u: &[Symbol], w: &[Symbol]) -> bool {
    let mut it = w.iter();
    u.iter().all(|c| it.any(|d| d == c))
}

/// Weak embedding: positions may repeat, so consecutive equal letters of `u`
/// can share one position of `w`.
pub fn is_weak_subword(u: &[Symbol], w: &[Symbol]) -> bool {
    let mut pos = 0;
    for c in u {
        while pos < w.len() && &w[pos] != c {
            pos += 1;
        }
        if pos == w.len() {
            return false;
        }
    }
    true
}

pub fn is_non_repeating(u: &[Symbol]) -> bool {
    u.windows(2).all(|p| p[0] != p[1])
}

/// Removes runs of equal adjacent letters (`aabba` becomes `aba`).
pub fn collapse_runs(u: &[Symbol]) -> Vec<Symbol> {
    let mut out: Vec<Symbol> = Vec::with_capacity(u.len());
    for c in u {
        if out.last() != Some(c) {
            out.push(c.clone());
        }
    }
    out
}

/// Greedy weak-embedding cursor: first position `>= from` holding `c`.
fn advance(w: &[Symbol], from: usize, c: &Symbol) -> Option<usize> {
    (from..w.len()).find(|&i| &w[i] == c)
}

/// Shortest word (ties broken lexicographically by letter name) that is a
/// weak subword of every word of `positives` but not of `v`.
///
/// Breadth-first search over cursor tuples: one greedy weak-embedding cursor
/// per positive word and one for `v` (`None` once `v` can no longer embed).
/// Exponential in `positives.len()`.
pub fn common_weak_subword_avoiding(positives: &[Vec<Symbol>], v: &[Symbol]) -> Option<Vec<Symbol>> {
    if positives.is_empty() {
        return None;
    }
    let mut letters: Vec<Symbol> = positives[0].clone();
    letters.sort();
    letters.dedup();

    type State = (Vec<usize>, Option<usize>);
    let start: State = (vec![0; positives.len()], Some(0));
    let mut seen: HashSet<State> = HashSet::new();
    seen.insert(start.clone());
    let mut queue: VecDeque<(State, Vec<Symbol>)> = VecDeque::new();
    queue.push_back((start, Vec::new()));
    while let Some(((cursors, vc), word)) = queue.pop_front() {
        for c in &letters {
            let next: Option<Vec<usize>> = positives
                .iter()
                .zip(&cursors)
                .map(|(u, &i)| advance(u, i, c))
                .collect();
            let Some(next) = next else { continue };
            let nv = vc.and_then(|i| advance(v, i, c));
            let mut extended = word.clone();
            extended.push(c.clone());
            if nv.is_none() {
                return Some(extended);
            }
            let state = (next, nv);
            if seen.insert(state.clone()) {
                queue.push_back((state, extended));
            }
        }
    }
    None
}
