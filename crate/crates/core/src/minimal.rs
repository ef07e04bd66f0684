//! Minimal separators without a manual size bound: decide existence with a
//! fragment-specific procedure, then search exactly up to the size of a
//! known separator.

use thiserror::Error;

use crate::degenerate::{
    construct_separator, learn_bool, learn_for_fixed, learn_gand, learn_unary, Construction, DegenerateError,
    FOR_ALPHABET_LIMIT,
};
use crate::exact::{learn_exact_with, ExactConfig, ExactError};
use crate::formula::{Formula, Operator, OperatorSet};
use crate::pattern::greedy_approx_xand;
use crate::sample::{LearnResult, Sample};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MinimalError {
    #[error("no existence procedure for operators {0}; use exact learning with an explicit size bound")]
    UnsupportedFragment(OperatorSet),
    #[error(transparent)]
    Degenerate(#[from] DegenerateError),
    /// The exact search hit its resource cap. `separator` is a valid but
    /// possibly non-minimal separator.
    #[error("exact search exhausted ({source}); a separator of size {} is known", separator.size())]
    Exhausted { separator: Formula, source: ExactError },
}

/// [`learn_minimal_with`] using the default exact-search settings.
pub fn learn_minimal(s: &Sample, ops: OperatorSet) -> Result<LearnResult, MinimalError> {
    learn_minimal_with(s, ops, &ExactConfig::new(1))
}

/// `cfg.max_size` is ignored; the bound comes from the constructed separator.
pub fn learn_minimal_with(s: &Sample, ops: OperatorSet, cfg: &ExactConfig) -> Result<LearnResult, MinimalError> {
    if !ops.is_subset(OperatorSet::full_without_until()) || ops.contains(Operator::Not) {
        return Err(MinimalError::UnsupportedFragment(ops));
    }
    let temporal = OperatorSet::of(&[Operator::Eventually, Operator::Globally, Operator::Next]);
    let boolean = OperatorSet::of(&[Operator::And, Operator::Or]);
    let only = |list: &str| ops == OperatorSet::parse(list).expect("static operator list");

    if s.has_overlap() {
        return Ok(LearnResult::NoSeparatorExists);
    }
    if s.negative().is_empty() {
        return Ok(LearnResult::found(Formula::True));
    }
    if s.positive().is_empty() {
        return Ok(LearnResult::found(Formula::False));
    }

    // fragments whose learner is already minimal
    if ops.intersection(temporal).is_empty() {
        return Ok(learn_bool(s, ops)?);
    }
    if ops.intersection(boolean).is_empty() {
        return Ok(learn_unary(s, ops)?);
    }
    if only("G,and") {
        return Ok(learn_gand(s));
    }
    if only("F,or") {
        return Ok(learn_for_fixed(s, FOR_ALPHABET_LIMIT)?);
    }

    let cap = if only("X,and") {
        greedy_approx_xand(s).map_or(LearnResult::NoSeparatorExists, |p| LearnResult::found(p.to_formula()))
    } else if Construction::for_operators(ops).is_some() {
        construct_separator(s, ops)?
    } else {
        return Err(MinimalError::UnsupportedFragment(ops));
    };
    let separator = match cap {
        LearnResult::Found { formula, .. } => formula,
        other => return Ok(other),
    };
    if separator.size() == 1 {
        return Ok(LearnResult::found(separator));
    }
    let cfg = ExactConfig { max_size: separator.size(), ..*cfg };
    match learn_exact_with(s, ops, &cfg) {
        Ok(LearnResult::Found { formula, size }) => Ok(LearnResult::Found { formula, size }),
        // only possible when the separator uses a constant inside, which the
        // enumeration never builds
        Ok(_) => Ok(LearnResult::found(separator)),
        Err(source) => Err(MinimalError::Exhausted { separator, source }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    fn ops(s: &str) -> OperatorSet {
        OperatorSet::parse(s).unwrap()
    }

    #[test]
    fn examples() {
        let s = Sample::from_strs(&["ab"], &["a"]);
        let r = learn_minimal(&s, ops("X,and,or")).unwrap();
        assert_eq!(r, LearnResult::found(parse("X b").unwrap()));
        let s = Sample::from_strs(&["a"], &["b"]);
        for o in ["X,and", "F,G,and,or", "G,X,and,or", "F,and", "and", "G,and,or"] {
            assert_eq!(learn_minimal(&s, ops(o)).unwrap().size(), Some(1), "{o}");
        }
    }

    #[test]
    fn obstruction_reported() {
        let s = Sample::from_strs(&["ab"], &["abbb"]);
        assert_eq!(learn_minimal(&s, ops("G,X,and,or")).unwrap(), LearnResult::NoSeparatorExists);
        let s = Sample::from_strs(&["ab"], &["aab"]);
        assert_eq!(learn_minimal(&s, ops("F,and")).unwrap(), LearnResult::NoSeparatorExists);
    }

    #[test]
    fn unsupported_fragments() {
        let s = Sample::from_strs(&["a"], &["b"]);
        for o in ["X,or", "F,G,and", "G,or", "U,and", "F,not"] {
            assert!(matches!(learn_minimal(&s, ops(o)), Err(MinimalError::UnsupportedFragment(_))), "{o}");
        }
    }

    #[test]
    fn exhaustion_keeps_separator() {
        let s = Sample::from_strs(&["abcab", "bcabc"], &["abcba", "cbacb", "bacab"]);
        let cfg = ExactConfig::new(1).with_max_formulas(20);
        match learn_minimal_with(&s, ops("G,X,and,or"), &cfg) {
            Err(MinimalError::Exhausted { separator, .. }) => assert!(crate::separates(&separator, &s)),
            other => panic!("{other:?}"),
        }
    }
}
