use thiserror::Error;

use super::{Formula, Operator, OperatorSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DualizeError {
    #[error("cannot push negation through {0:?}; only F, G, and, or and literals dualize")]
    UnsupportedOperator(Operator),
}

/// Negation of `phi` pushed down to the letters. Only defined without `X`
/// and `U`: on finite words `!X a` is not `X !a`.
pub fn dualize(phi: &Formula) -> Result<Formula, DualizeError> {
    Ok(match phi {
        Formula::True => Formula::False,
        Formula::False => Formula::True,
        Formula::Letter(s) => Formula::NegLetter(s.clone()),
        Formula::NegLetter(s) => Formula::Letter(s.clone()),
        Formula::Eventually(f) => Formula::globally(dualize(f)?),
        Formula::Globally(f) => Formula::eventually(dualize(f)?),
        Formula::And(l, r) => Formula::or(dualize(l)?, dualize(r)?),
        Formula::Or(l, r) => Formula::and(dualize(l)?, dualize(r)?),
        Formula::Next(_) => return Err(DualizeError::UnsupportedOperator(Operator::Next)),
        Formula::Until(..) => return Err(DualizeError::UnsupportedOperator(Operator::Until)),
    })
}

/// Whether every operator of `phi` lies in `ops`. Letters and constants are
/// always allowed; negated letters need `Not`.
pub fn in_fragment(phi: &Formula, ops: OperatorSet) -> bool {
    phi.operators().is_subset(ops)
}
