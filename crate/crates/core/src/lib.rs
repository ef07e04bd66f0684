//! Passive learning of LTL formulas over finite traces.

pub mod degenerate;
pub mod exact;
pub mod fattern;
pub mod formula;
pub mod hardness;
pub mod minimal;
pub mod par;
pub mod pattern;
pub mod sample;

pub use formula::{Formula, Operator, OperatorSet, Symbol, Word};
pub use par::Parallelism;
pub use sample::{separates, LearnResult, Sample};
