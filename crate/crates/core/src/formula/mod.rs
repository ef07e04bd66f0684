//! Formula syntax, finite-trace semantics and the textual formula language.

mod eval;
mod order;
mod parse;
mod table;
mod transform;

use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub use eval::{evaluate, satisfies, truth_row, EvalError};
pub use parse::{parse, ParseError};
pub use table::{semantics_table, SemanticsTable, TraceSet};
pub use transform::{dualize, in_fragment, DualizeError};

/// Words that cannot be used as letters because the grammar claims them.
pub const RESERVED: [&str; 6] = ["true", "false", "X", "F", "G", "U"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymbolError {
    #[error("letter must be non-empty")]
    Empty,
    #[error("letter {0:?} contains characters outside [A-Za-z0-9_]")]
    InvalidCharacter(String),
    #[error("letter {0:?} collides with a reserved word")]
    Reserved(String),
}

/// An alphabet letter. Letters are opaque tokens, so alphabets of any size
/// can be built (`a1`, `b17`, `0`, ...).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol(Arc<str>);

impl Symbol {
    pub fn new(name: &str) -> Result<Self, SymbolError> {
        if name.is_empty() {
            return Err(SymbolError::Empty);
        }
        if !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(SymbolError::InvalidCharacter(name.to_string()));
        }
        if RESERVED.contains(&name) {
            return Err(SymbolError::Reserved(name.to_string()));
        }
        Ok(Symbol(Arc::from(name)))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl TryFrom<&str> for Symbol {
    type Error = SymbolError;
    fn try_from(value: &str) -> Result<Self, Self::Error> {
        Symbol::new(value)
    }
}

impl Serialize for Symbol {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Symbol {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Symbol::new(&s).map_err(serde::de::Error::custom)
    }
}

/// A finite word over letters. Public entry points reject empty words.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn new(letters: Vec<Symbol>) -> Self {
        Word(letters)
    }

    /// Builds a word with one letter per character, e.g. `"abba"`.
    ///
    /// Panics if a character is not a valid letter; meant for literals.
    pub fn from_chars(text: &str) -> Self {
        Word(
            text.chars()
                .map(|c| Symbol::new(&c.to_string()).expect("invalid letter character"))
                .collect(),
        )
    }

    /// Parses space-separated letter tokens.
    pub fn from_tokens(text: &str) -> Result<Self, SymbolError> {
        text.split_whitespace()
            .map(Symbol::new)
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }

    pub fn letters(&self) -> &[Symbol] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Symbol> {
        self.0
    }

    /// `self` followed by `count` copies of `letter`.
    pub fn padded(&self, letter: &Symbol, count: usize) -> Word {
        let mut v = self.0.clone();
        v.extend(std::iter::repeat_n(letter.clone(), count));
        Word(v)
    }

    pub fn concat<'a>(parts: impl IntoIterator<Item = &'a Word>) -> Word {
        Word(parts.into_iter().flat_map(|w| w.0.iter().cloned()).collect())
    }

    pub fn repeat(&self, times: usize) -> Word {
        Word(std::iter::repeat_n(self.0.iter(), times).flatten().cloned().collect())
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len.min(self.0.len())].to_vec())
    }
}

impl Deref for Word {
    type Target = [Symbol];
    fn deref(&self) -> &[Symbol] {
        &self.0
    }
}

impl AsRef<[Symbol]> for Word {
    fn as_ref(&self) -> &[Symbol] {
        &self.0
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Self {
        Word(v)
    }
}

impl FromIterator<Symbol> for Word {
    fn from_iter<I: IntoIterator<Item = Symbol>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

/// Single-character letters are printed back to back, longer tokens are
/// separated by spaces.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let compact = self.0.iter().all(|s| s.as_str().len() == 1);
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 && !compact {
                f.write_str(" ")?;
            }
            f.write_str(s.as_str())?;
        }
        Ok(())
    }
}

/// LTL formula in negation normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    Letter(Symbol),
    NegLetter(Symbol),
    Next(Box<Formula>),
    Eventually(Box<Formula>),
    Globally(Box<Formula>),
    Until(Box<Formula>, Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn letter(s: &Symbol) -> Formula {
        Formula::Letter(s.clone())
    }

    /// Letter from a literal name. Panics on invalid names.
    pub fn atom(name: &str) -> Formula {
        Formula::Letter(Symbol::new(name).expect("invalid letter"))
    }

    pub fn neg_letter(s: &Symbol) -> Formula {
        Formula::NegLetter(s.clone())
    }

    pub fn next(f: Formula) -> Formula {
        Formula::Next(Box::new(f))
    }

    pub fn eventually(f: Formula) -> Formula {
        Formula::Eventually(Box::new(f))
    }

    pub fn globally(f: Formula) -> Formula {
        Formula::Globally(Box::new(f))
    }

    pub fn until(l: Formula, r: Formula) -> Formula {
        Formula::Until(Box::new(l), Box::new(r))
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::Or(Box::new(l), Box::new(r))
    }

    /// `X^k f`.
    pub fn next_n(k: usize, f: Formula) -> Formula {
        (0..k).fold(f, |acc, _| Formula::next(acc))
    }

    /// Right-nested conjunction; `True` when empty.
    pub fn conjunction(parts: impl IntoIterator<Item = Formula>) -> Formula {
        let mut parts: Vec<Formula> = parts.into_iter().collect();
        let Some(mut acc) = parts.pop() else {
            return Formula::True;
        };
        while let Some(f) = parts.pop() {
            acc = Formula::and(f, acc);
        }
        acc
    }

    /// Right-nested disjunction; `False` when empty.
    pub fn disjunction(parts: impl IntoIterator<Item = Formula>) -> Formula {
        let mut parts: Vec<Formula> = parts.into_iter().collect();
        let Some(mut acc) = parts.pop() else {
            return Formula::False;
        };
        while let Some(f) = parts.pop() {
            acc = Formula::or(f, acc);
        }
        acc
    }

    /// Number of nodes of the syntax tree; a negated letter counts two.
    pub fn size(&self) -> usize {
        match self {
            Formula::True | Formula::False | Formula::Letter(_) => 1,
            Formula::NegLetter(_) => 2,
            Formula::Next(f) | Formula::Eventually(f) | Formula::Globally(f) => 1 + f.size(),
            Formula::Until(l, r) | Formula::And(l, r) | Formula::Or(l, r) => {
                1 + l.size() + r.size()
            }
        }
    }

    /// Operators occurring in the formula.
    pub fn operators(&self) -> OperatorSet {
        let mut ops = OperatorSet::empty();
        self.visit(&mut |f| {
            if let Some(op) = f.operator() {
                ops.insert(op);
            }
        });
        ops
    }

    /// Operator at the root, if any.
    pub fn operator(&self) -> Option<Operator> {
        match self {
            Formula::True | Formula::False | Formula::Letter(_) => None,
            Formula::NegLetter(_) => Some(Operator::Not),
            Formula::Next(_) => Some(Operator::Next),
            Formula::Eventually(_) => Some(Operator::Eventually),
            Formula::Globally(_) => Some(Operator::Globally),
            Formula::Until(..) => Some(Operator::Until),
            Formula::And(..) => Some(Operator::And),
            Formula::Or(..) => Some(Operator::Or),
        }
    }

    /// Number of `X` nodes.
    pub fn count_next(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |f| {
            if matches!(f, Formula::Next(_)) {
                n += 1;
            }
        });
        n
    }

    /// Letters occurring in the formula, sorted and deduplicated.
    pub fn letters(&self) -> Vec<Symbol> {
        let mut out = Vec::new();
        self.visit(&mut |f| {
            if let Formula::Letter(s) | Formula::NegLetter(s) = f {
                out.push(s.clone());
            }
        });
        out.sort();
        out.dedup();
        out
    }

    /// Pre-order traversal.
    pub fn visit(&self, f: &mut impl FnMut(&Formula)) {
        f(self);
        match self {
            Formula::Next(c) | Formula::Eventually(c) | Formula::Globally(c) => c.visit(f),
            Formula::Until(l, r) | Formula::And(l, r) | Formula::Or(l, r) => {
                l.visit(f);
                r.visit(f);
            }
            _ => {}
        }
    }

    /// Conjuncts of a (possibly nested) conjunction, left to right.
    pub fn conjuncts(&self) -> Vec<&Formula> {
        let mut out = Vec::new();
        fn go<'a>(f: &'a Formula, out: &mut Vec<&'a Formula>) {
            if let Formula::And(l, r) = f {
                go(l, out);
                go(r, out);
            } else {
                out.push(f);
            }
        }
        go(self, &mut out);
        out
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::True => f.write_str("true"),
            Formula::False => f.write_str("false"),
            Formula::Letter(s) => write!(f, "{s}"),
            Formula::NegLetter(s) => write!(f, "!{s}"),
            Formula::Next(c) => write!(f, "X {c}"),
            Formula::Eventually(c) => write!(f, "F {c}"),
            Formula::Globally(c) => write!(f, "G {c}"),
            Formula::Until(l, r) => write!(f, "({l} U {r})"),
            Formula::And(l, r) => write!(f, "({l} & {r})"),
            Formula::Or(l, r) => write!(f, "({l} | {r})"),
        }
    }
}

impl std::str::FromStr for Formula {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

impl Serialize for Formula {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Formula {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        parse(&s).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Operator {
    Until,
    Eventually,
    Globally,
    Next,
    And,
    Or,
    Not,
}

impl Operator {
    pub const ALL: [Operator; 7] = [
        Operator::Until,
        Operator::Eventually,
        Operator::Globally,
        Operator::Next,
        Operator::And,
        Operator::Or,
        Operator::Not,
    ];

    fn bit(self) -> u8 {
        1 << (self as u8)
    }

    pub fn token(self) -> &'static str {
        match self {
            Operator::Until => "U",
            Operator::Eventually => "F",
            Operator::Globally => "G",
            Operator::Next => "X",
            Operator::And => "and",
            Operator::Or => "or",
            Operator::Not => "not",
        }
    }

    pub fn from_token(token: &str) -> Option<Operator> {
        Some(match token {
            "U" => Operator::Until,
            "F" => Operator::Eventually,
            "G" => Operator::Globally,
            "X" => Operator::Next,
            "and" | "&" => Operator::And,
            "or" | "|" => Operator::Or,
            "not" | "!" => Operator::Not,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown operator token {0:?} (expected U, F, G, X, and, or, not)")]
pub struct UnknownOperator(pub String);

/// A set of operators, i.e. a fragment of LTL. Letters and the constants
/// belong to every fragment; `Not` allows negated letters.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct OperatorSet(u8);

impl OperatorSet {
    pub const fn empty() -> Self {
        OperatorSet(0)
    }

    pub fn of(ops: &[Operator]) -> Self {
        let mut s = OperatorSet::empty();
        for &op in ops {
            s.insert(op);
        }
        s
    }

    /// `{F, G, X, and, or}`, every operator except until and negation.
    pub fn full_without_until() -> Self {
        OperatorSet::of(&[
            Operator::Eventually,
            Operator::Globally,
            Operator::Next,
            Operator::And,
            Operator::Or,
        ])
    }

    pub fn all() -> Self {
        OperatorSet::of(&Operator::ALL)
    }

    /// Parses a comma separated list such as `"F,and"`.
    pub fn parse(text: &str) -> Result<Self, UnknownOperator> {
        let mut s = OperatorSet::empty();
        for token in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let op = Operator::from_token(token).ok_or_else(|| UnknownOperator(token.to_string()))?;
            s.insert(op);
        }
        Ok(s)
    }

    pub fn insert(&mut self, op: Operator) {
        self.0 |= op.bit();
    }

    pub fn contains(self, op: Operator) -> bool {
        self.0 & op.bit() != 0
    }

    pub fn is_subset(self, other: OperatorSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: OperatorSet) -> Self {
        OperatorSet(self.0 | other.0)
    }

    pub fn intersection(self, other: OperatorSet) -> Self {
        OperatorSet(self.0 & other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = Operator> {
        Operator::ALL.into_iter().filter(move |op| self.contains(*op))
    }
}

impl fmt::Debug for OperatorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

impl fmt::Display for OperatorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tokens: Vec<&str> = self.iter().map(Operator::token).collect();
        f.write_str(&tokens.join(","))
    }
}

impl std::str::FromStr for OperatorSet {
    type Err = UnknownOperator;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        OperatorSet::parse(s)
    }
}

impl Serialize for OperatorSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for OperatorSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        OperatorSet::parse(&s).map_err(serde::de::Error::custom)
    }
}
