use thiserror::Error;

use super::{Formula, Symbol};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("cannot evaluate on the empty word")]
    EmptyWord,
    #[error("position {position} is outside [1, {len}]")]
    PositionOutOfRange { position: usize, len: usize },
}

/// Truth of `w[i:] |= phi` with 1-based position `i`.
pub fn evaluate(phi: &Formula, w: &[Symbol], i: usize) -> Result<bool, EvalError> {
    if w.is_empty() {
        return Err(EvalError::EmptyWord);
    }
    if i == 0 || i > w.len() {
        return Err(EvalError::PositionOutOfRange { position: i, len: w.len() });
    }
    Ok(truth_row(phi, w)[i - 1])
}

/// `w |= phi`. The empty word satisfies nothing.
pub fn satisfies(phi: &Formula, w: &[Symbol]) -> bool {
    !w.is_empty() && truth_row(phi, w)[0]
}

/// Truth value at every suffix of `w`, index 0 being the whole word.
pub fn truth_row(phi: &Formula, w: &[Symbol]) -> Vec<bool> {
    let n = w.len();
    match phi {
        Formula::True => vec![true; n],
        Formula::False => vec![false; n],
        Formula::Letter(s) => w.iter().map(|c| c == s).collect(),
        Formula::NegLetter(s) => w.iter().map(|c| c != s).collect(),
        Formula::Next(f) => {
            let inner = truth_row(f, w);
            (0..n).map(|i| i + 1 < n && inner[i + 1]).collect()
        }
        Formula::Eventually(f) => {
            let mut row = truth_row(f, w);
            for i in (0..n.saturating_sub(1)).rev() {
                row[i] |= row[i + 1];
            }
            row
        }
        Formula::Globally(f) => {
            let mut row = truth_row(f, w);
            for i in (0..n.saturating_sub(1)).rev() {
                row[i] &= row[i + 1];
            }
            row
        }
        Formula::Until(l, r) => {
            let lr = truth_row(l, w);
            let rr = truth_row(r, w);
            let mut row = vec![false; n];
            for i in (0..n).rev() {
                let later = i + 1 < n && row[i + 1];
                row[i] = rr[i] || (lr[i] && later);
            }
            row
        }
        Formula::And(l, r) => {
            let lr = truth_row(l, w);
            let rr = truth_row(r, w);
            lr.into_iter().zip(rr).map(|(x, y)| x && y).collect()
        }
        Formula::Or(l, r) => {
            let lr = truth_row(l, w);
            let rr = truth_row(r, w);
            lr.into_iter().zip(rr).map(|(x, y)| x || y).collect()
        }
    }
}
