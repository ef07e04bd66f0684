//! Samples of positive and negative words.

mod io;
mod subword;

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{Formula, Symbol, TraceSet, Word};

pub use io::{load_sample, parse_sample_text, save_sample, SampleIoError};
pub use subword::{collapse_runs, common_weak_subword_avoiding, is_non_repeating, is_subword, is_weak_subword};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SampleError {
    #[error("{side} word {index} is empty")]
    EmptyWord { side: Side, index: usize },
    #[error("{side} word {index} uses letter {letter:?} outside the alphabet")]
    ForeignLetter { side: Side, index: usize, letter: String },
    #[error("word {0:?} is both positive and negative")]
    Overlap(String),
    #[error("alphabet lists letter {0:?} twice")]
    DuplicateLetter(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Positive,
    Negative,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Positive => "positive",
            Side::Negative => "negative",
        })
    }
}

/// An alphabet with positive words `P` and negative words `N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sample {
    alphabet: Vec<Symbol>,
    positive: Vec<Word>,
    negative: Vec<Word>,
}

impl Sample {
    /// Validates and builds a sample. `P` and `N` must not share a word.
    pub fn new(alphabet: Vec<Symbol>, positive: Vec<Word>, negative: Vec<Word>) -> Result<Self, SampleError> {
        let s = Self::with_overlap(alphabet, positive, negative)?;
        let pos: HashSet<&Word> = s.positive.iter().collect();
        if let Some(w) = s.negative.iter().find(|w| pos.contains(w)) {
            return Err(SampleError::Overlap(w.to_string()));
        }
        Ok(s)
    }

    /// Like [`Sample::new`] but allows a word on both sides. Such a sample
    /// has no separator; reductions emit them for infeasible instances.
    pub fn with_overlap(alphabet: Vec<Symbol>, positive: Vec<Word>, negative: Vec<Word>) -> Result<Self, SampleError> {
        let mut seen = HashSet::new();
        for a in &alphabet {
            if !seen.insert(a) {
                return Err(SampleError::DuplicateLetter(a.to_string()));
            }
        }
        for (side, words) in [(Side::Positive, &positive), (Side::Negative, &negative)] {
            for (index, w) in words.iter().enumerate() {
                if w.is_empty() {
                    return Err(SampleError::EmptyWord { side, index });
                }
                if let Some(c) = w.iter().find(|c| !seen.contains(c)) {
                    return Err(SampleError::ForeignLetter { side, index, letter: c.to_string() });
                }
            }
        }
        Ok(Sample { alphabet, positive, negative })
    }

    /// Sample over the letters that occur in the words, in sorted order.
    pub fn from_words(positive: Vec<Word>, negative: Vec<Word>) -> Result<Self, SampleError> {
        let mut alphabet: Vec<Symbol> = positive.iter().chain(&negative).flat_map(|w| w.iter().cloned()).collect();
        alphabet.sort();
        alphabet.dedup();
        Self::new(alphabet, positive, negative)
    }

    /// Test and example shorthand: one character per letter.
    ///
    /// Panics on invalid input.
    pub fn from_strs(positive: &[&str], negative: &[&str]) -> Self {
        Self::from_words(
            positive.iter().map(|w| Word::from_chars(w)).collect(),
            negative.iter().map(|w| Word::from_chars(w)).collect(),
        )
        .expect("invalid literal sample")
    }

    pub fn alphabet(&self) -> &[Symbol] {
        &self.alphabet
    }

    pub fn positive(&self) -> &[Word] {
        &self.positive
    }

    pub fn negative(&self) -> &[Word] {
        &self.negative
    }

    /// Whether some word is both positive and negative.
    pub fn has_overlap(&self) -> bool {
        let pos: HashSet<&Word> = self.positive.iter().collect();
        self.negative.iter().any(|w| pos.contains(w))
    }

    /// Copy with duplicate words removed on each side, first occurrence kept.
    pub fn deduplicated(&self) -> Sample {
        fn dedup(ws: &[Word]) -> Vec<Word> {
            let mut seen = HashSet::new();
            ws.iter().filter(|w| seen.insert(*w)).cloned().collect()
        }
        Sample {
            alphabet: self.alphabet.clone(),
            positive: dedup(&self.positive),
            negative: dedup(&self.negative),
        }
    }

    /// `P` and `N` exchanged.
    pub fn swapped(&self) -> Sample {
        Sample {
            alphabet: self.alphabet.clone(),
            positive: self.negative.clone(),
            negative: self.positive.clone(),
        }
    }

    /// Length of the longest word, 0 for an empty sample.
    pub fn max_len(&self) -> usize {
        self.words().map(|w| w.len()).max().unwrap_or(0)
    }

    /// Positive words followed by negative words.
    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.positive.iter().chain(&self.negative)
    }

    /// Bitset view of `P ++ N` over the sample alphabet.
    pub fn traces(&self) -> TraceSet {
        let words: Vec<&[Symbol]> = self.words().map(|w| w.letters()).collect();
        TraceSet::with_alphabet(&self.alphabet, &words).expect("sample words are non-empty")
    }
}

/// Every positive word satisfies `phi` and no negative word does.
pub fn separates(phi: &Formula, s: &Sample) -> bool {
    s.positive.iter().all(|w| crate::formula::satisfies(phi, w))
        && !s.negative.iter().any(|w| crate::formula::satisfies(phi, w))
}

/// Outcome of a learning call.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum LearnResult {
    Found { formula: Formula, size: usize },
    /// No formula of the fragment separates the sample.
    NoSeparatorExists,
    /// Nothing separates within the size bound; larger formulas may.
    NoneWithinBound { bound: usize },
}

impl LearnResult {
    pub fn found(formula: Formula) -> Self {
        let size = formula.size();
        LearnResult::Found { formula, size }
    }

    pub fn formula(&self) -> Option<&Formula> {
        match self {
            LearnResult::Found { formula, .. } => Some(formula),
            _ => None,
        }
    }

    pub fn size(&self) -> Option<usize> {
        match self {
            LearnResult::Found { size, .. } => Some(*size),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    #[test]
    fn separation_examples() {
        assert!(separates(&parse("F a").unwrap(), &Sample::from_strs(&["ba"], &["bb"])));
        assert!(!separates(&Formula::True, &Sample::from_strs(&["ab"], &["b"])));
        assert!(separates(&parse("a").unwrap(), &Sample::from_strs(&["ab"], &["ba"])));
    }

    #[test]
    fn validation() {
        let a = Symbol::new("a").unwrap();
        let overlap = Sample::new(vec![a.clone()], vec![Word::from_chars("a")], vec![Word::from_chars("a")]);
        assert!(matches!(overlap, Err(SampleError::Overlap(_))));
        let foreign = Sample::new(vec![a.clone()], vec![Word::from_chars("ab")], vec![]);
        assert!(matches!(foreign, Err(SampleError::ForeignLetter { .. })));
        let empty = Sample::new(vec![a.clone()], vec![Word::default()], vec![]);
        assert!(matches!(empty, Err(SampleError::EmptyWord { .. })));
        assert!(Sample::new(vec![a], vec![], vec![]).is_ok());
    }

    #[test]
    fn dedup_keeps_order() {
        let s = Sample::from_strs(&["ab", "b", "ab"], &["a", "a"]).deduplicated();
        assert_eq!(s.positive().len(), 2);
        assert_eq!(s.negative().len(), 1);
    }

    #[test]
    fn result_serialization() {
        let r = LearnResult::found(parse("F a").unwrap());
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(json, r#"{"outcome":"found","formula":"F a","size":2}"#);
        let back: LearnResult = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }
}
