//! Bit-packed semantics tables.
//!
//! Every word of a [`TraceSet`] owns `ceil(len / 64)` consecutive `u64`
//! blocks; bit `i` of a word's blocks is the truth value on the suffix
//! starting at (0-based) position `i`. Bits past the end of a word are
//! always zero.

use std::collections::HashMap;

use super::{EvalError, Formula, Symbol};

#[derive(Debug, Clone)]
pub struct TraceSet {
    letters: Vec<Symbol>,
    index: HashMap<Symbol, usize>,
    lens: Vec<usize>,
    offsets: Vec<usize>,
    valid: Vec<u64>,
    letter_masks: Vec<u64>,
    single_block: bool,
}

#[inline]
fn up_to(h: u32) -> u64 {
    if h >= 63 {
        u64::MAX
    } else {
        (1u64 << (h + 1)) - 1
    }
}

#[inline]
fn above(h: u32) -> u64 {
    if h >= 63 {
        0
    } else {
        u64::MAX << (h + 1)
    }
}

impl TraceSet {
    pub fn new<W: AsRef<[Symbol]>>(words: &[W]) -> Result<Self, EvalError> {
        Self::with_alphabet(&[], words)
    }

    /// Trace set whose letter index covers `alphabet` plus every letter that
    /// occurs in `words`, sorted by name.
    pub fn with_alphabet<W: AsRef<[Symbol]>>(alphabet: &[Symbol], words: &[W]) -> Result<Self, EvalError> {
        let mut letters: Vec<Symbol> = alphabet.to_vec();
        for w in words {
            let w = w.as_ref();
            if w.is_empty() {
                return Err(EvalError::EmptyWord);
            }
            letters.extend(w.iter().cloned());
        }
        letters.sort();
        letters.dedup();
        let index: HashMap<Symbol, usize> = letters.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();

        let mut offsets = Vec::with_capacity(words.len() + 1);
        let mut lens = Vec::with_capacity(words.len());
        let mut total = 0;
        offsets.push(0);
        for w in words {
            let len = w.as_ref().len();
            lens.push(len);
            total += len.div_ceil(64);
            offsets.push(total);
        }
        let mut valid = vec![0u64; total];
        let mut letter_masks = vec![0u64; total * letters.len()];
        for (wi, w) in words.iter().enumerate() {
            let base = offsets[wi];
            for (pos, s) in w.as_ref().iter().enumerate() {
                let block = base + pos / 64;
                let bit = 1u64 << (pos % 64);
                valid[block] |= bit;
                letter_masks[index[s] * total + block] |= bit;
            }
        }
        Ok(TraceSet {
            letters,
            index,
            single_block: lens.iter().all(|&l| l <= 64),
            lens,
            offsets,
            valid,
            letter_masks,
        })
    }

    /// Number of `u64` blocks in one table.
    pub fn blocks(&self) -> usize {
        self.valid.len()
    }

    pub fn word_count(&self) -> usize {
        self.lens.len()
    }

    pub fn word_len(&self, w: usize) -> usize {
        self.lens[w]
    }

    pub fn letters(&self) -> &[Symbol] {
        &self.letters
    }

    pub fn letter_index(&self, s: &Symbol) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn valid(&self) -> &[u64] {
        &self.valid
    }

    pub fn letter_mask(&self, letter: usize) -> &[u64] {
        let b = self.blocks();
        &self.letter_masks[letter * b..(letter + 1) * b]
    }

    /// Mask with the bit of position 0 set for each listed word.
    pub fn first_positions(&self, words: impl IntoIterator<Item = usize>) -> Vec<u64> {
        let mut m = vec![0u64; self.blocks()];
        for w in words {
            m[self.offsets[w]] |= 1;
        }
        m
    }

    /// Bit for word `w` at 0-based suffix position `pos`.
    pub fn bit(&self, table: &[u64], w: usize, pos: usize) -> bool {
        debug_assert!(pos < self.lens[w]);
        table[self.offsets[w] + pos / 64] >> (pos % 64) & 1 == 1
    }

    pub fn negated_letter_into(&self, letter: usize, out: &mut [u64]) {
        for ((o, v), m) in out.iter_mut().zip(&self.valid).zip(self.letter_mask(letter)) {
            *o = v & !m;
        }
    }

    pub fn next_into(&self, x: &[u64], out: &mut [u64]) {
        if self.single_block {
            for (o, v) in out.iter_mut().zip(x) {
                *o = v >> 1;
            }
            return;
        }
        for w in 0..self.lens.len() {
            let (s, e) = (self.offsets[w], self.offsets[w + 1]);
            for k in s..e {
                let carry = if k + 1 < e { x[k + 1] << 63 } else { 0 };
                out[k] = (x[k] >> 1) | carry;
            }
        }
    }

    pub fn eventually_into(&self, x: &[u64], out: &mut [u64]) {
        if self.single_block {
            for (o, &v) in out.iter_mut().zip(x) {
                *o = if v == 0 { 0 } else { up_to(63 - v.leading_zeros()) };
            }
            return;
        }
        for w in 0..self.lens.len() {
            let (s, e) = (self.offsets[w], self.offsets[w + 1]);
            let mut seen = false;
            for k in (s..e).rev() {
                out[k] = if seen {
                    self.valid[k]
                } else if x[k] != 0 {
                    seen = true;
                    self.valid[k] & up_to(63 - x[k].leading_zeros())
                } else {
                    0
                };
            }
        }
    }

    pub fn globally_into(&self, x: &[u64], out: &mut [u64]) {
        if self.single_block {
            for ((o, &v), &valid) in out.iter_mut().zip(x).zip(&self.valid) {
                let z = valid & !v;
                *o = if z == 0 { valid } else { valid & above(63 - z.leading_zeros()) };
            }
            return;
        }
        for w in 0..self.lens.len() {
            let (s, e) = (self.offsets[w], self.offsets[w + 1]);
            let mut broken = false;
            for k in (s..e).rev() {
                out[k] = if broken {
                    0
                } else {
                    let z = self.valid[k] & !x[k];
                    if z == 0 {
                        self.valid[k]
                    } else {
                        broken = true;
                        self.valid[k] & above(63 - z.leading_zeros())
                    }
                };
            }
        }
    }

    pub fn until_into(&self, l: &[u64], r: &[u64], out: &mut [u64]) {
        for w in 0..self.lens.len() {
            let s = self.offsets[w];
            let mut later = false;
            for pos in (0..self.lens[w]).rev() {
                let (k, bit) = (s + pos / 64, pos % 64);
                let lb = l[k] >> bit & 1 == 1;
                let rb = r[k] >> bit & 1 == 1;
                let v = rb || (lb && later);
                if pos % 64 == 63 || pos + 1 == self.lens[w] {
                    out[k] = 0;
                }
                out[k] |= (v as u64) << bit;
                later = v;
            }
        }
    }

    /// Table of an arbitrary formula, computed bottom-up.
    pub fn table(&self, phi: &Formula) -> Vec<u64> {
        let b = self.blocks();
        match phi {
            Formula::True => self.valid.clone(),
            Formula::False => vec![0; b],
            Formula::Letter(s) => match self.letter_index(s) {
                Some(i) => self.letter_mask(i).to_vec(),
                None => vec![0; b],
            },
            Formula::NegLetter(s) => match self.letter_index(s) {
                Some(i) => {
                    let mut out = vec![0; b];
                    self.negated_letter_into(i, &mut out);
                    out
                }
                None => self.valid.clone(),
            },
            Formula::Next(f) => {
                let x = self.table(f);
                let mut out = vec![0; b];
                self.next_into(&x, &mut out);
                out
            }
            Formula::Eventually(f) => {
                let x = self.table(f);
                let mut out = vec![0; b];
                self.eventually_into(&x, &mut out);
                out
            }
            Formula::Globally(f) => {
                let x = self.table(f);
                let mut out = vec![0; b];
                self.globally_into(&x, &mut out);
                out
            }
            Formula::Until(l, r) => {
                let (x, y) = (self.table(l), self.table(r));
                let mut out = vec![0; b];
                self.until_into(&x, &y, &mut out);
                out
            }
            Formula::And(l, r) => {
                let (x, y) = (self.table(l), self.table(r));
                let mut out = vec![0; b];
                and_into(&x, &y, &mut out);
                out
            }
            Formula::Or(l, r) => {
                let (x, y) = (self.table(l), self.table(r));
                let mut out = vec![0; b];
                or_into(&x, &y, &mut out);
                out
            }
        }
    }

    /// Whether `w |= phi`, read from a table.
    pub fn holds(&self, table: &[u64], w: usize) -> bool {
        table[self.offsets[w]] & 1 == 1
    }
}

pub fn and_into(a: &[u64], b: &[u64], out: &mut [u64]) {
    for ((o, x), y) in out.iter_mut().zip(a).zip(b) {
        *o = x & y;
    }
}

pub fn or_into(a: &[u64], b: &[u64], out: &mut [u64]) {
    for ((o, x), y) in out.iter_mut().zip(a).zip(b) {
        *o = x | y;
    }
}

/// Satisfaction of one formula at every suffix of every word of a list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemanticsTable {
    lens: Vec<usize>,
    offsets: Vec<usize>,
    bits: Vec<u64>,
}

impl SemanticsTable {
    pub fn word_count(&self) -> usize {
        self.lens.len()
    }

    /// Truth on the suffix of word `w` starting at 1-based position `i`.
    pub fn bit(&self, w: usize, i: usize) -> bool {
        assert!(i >= 1 && i <= self.lens[w], "position {i} outside word {w}");
        let pos = i - 1;
        self.bits[self.offsets[w] + pos / 64] >> (pos % 64) & 1 == 1
    }

    pub fn row(&self, w: usize) -> Vec<bool> {
        (1..=self.lens[w]).map(|i| self.bit(w, i)).collect()
    }

    /// Whether word `w` as a whole satisfies the formula.
    pub fn accepts(&self, w: usize) -> bool {
        self.bit(w, 1)
    }
}

pub fn semantics_table<W: AsRef<[Symbol]>>(phi: &Formula, words: &[W]) -> Result<SemanticsTable, EvalError> {
    let traces = TraceSet::new(words)?;
    let bits = traces.table(phi);
    Ok(SemanticsTable { lens: traces.lens.clone(), offsets: traces.offsets.clone(), bits })
}
