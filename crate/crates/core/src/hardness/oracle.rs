//! Brute-force combinatorial solvers used to certify the reductions.

use std::collections::BTreeSet;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest ground set the subset scans accept.
pub const ORACLE_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("ground set of {size} elements exceeds the brute-force limit of {limit}")]
    TooLarge { size: usize, limit: usize },
}

/// An optimal choice of elements (hitting set) or set indices (cover),
/// 1-based and sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Solution {
    pub size: usize,
    pub chosen: Vec<usize>,
}

fn guard(size: usize) -> Result<(), OracleError> {
    if size > ORACLE_LIMIT {
        Err(OracleError::TooLarge { size, limit: ORACLE_LIMIT })
    } else {
        Ok(())
    }
}

/// Smallest `H ⊆ [1, ground]` meeting every set, or `None` if some set is
/// empty. Ties go to the lexicographically first `H`.
pub fn solve_hitting_set(ground: usize, sets: &[BTreeSet<usize>]) -> Result<Option<Solution>, OracleError> {
    guard(ground)?;
    if sets.iter().any(BTreeSet::is_empty) {
        return Ok(None);
    }
    for r in 0..=ground {
        if let Some(h) = (1..=ground).combinations(r).find(|h| sets.iter().all(|c| h.iter().any(|x| c.contains(x)))) {
            return Ok(Some(Solution { size: r, chosen: h }));
        }
    }
    Ok(None)
}

/// Fewest of `sets` (indices 1-based) whose union is `[1, universe]`, or
/// `None` when the union of all of them falls short.
pub fn solve_set_cover(universe: usize, sets: &[BTreeSet<usize>]) -> Result<Option<Solution>, OracleError> {
    guard(sets.len())?;
    let covers = |chosen: &[usize]| (1..=universe).all(|e| chosen.iter().any(|&i| sets[i - 1].contains(&e)));
    for r in 0..=sets.len() {
        if let Some(c) = (1..=sets.len()).combinations(r).find(|c| covers(c)) {
            return Ok(Some(Solution { size: r, chosen: c }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn family(sets: &[&[usize]]) -> Vec<BTreeSet<usize>> {
        sets.iter().map(|s| s.iter().copied().collect()).collect()
    }

    #[test]
    fn hitting_set_examples() {
        assert_eq!(solve_hitting_set(2, &family(&[&[1], &[2]])).unwrap().unwrap().size, 2);
        let s = solve_hitting_set(3, &family(&[&[1, 2], &[2, 3]])).unwrap().unwrap();
        assert_eq!(s, Solution { size: 1, chosen: vec![2] });
        assert_eq!(solve_hitting_set(3, &[]).unwrap().unwrap().size, 0);
        assert_eq!(solve_hitting_set(3, &family(&[&[]])).unwrap(), None);
        assert!(solve_hitting_set(21, &[]).is_err());
    }

    #[test]
    fn set_cover_examples() {
        let s = solve_set_cover(3, &family(&[&[1, 2], &[2], &[3]])).unwrap().unwrap();
        assert_eq!(s, Solution { size: 2, chosen: vec![1, 3] });
        assert_eq!(solve_set_cover(0, &family(&[&[1]])).unwrap().unwrap().size, 0);
        assert_eq!(solve_set_cover(2, &family(&[&[1]])).unwrap(), None);
    }
}
