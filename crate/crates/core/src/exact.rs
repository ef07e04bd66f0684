//! Minimal separating formulas by exhaustive enumeration.
//!
//! Formulas are generated layer by layer in increasing size, each one from
//! the semantics tables of its children, so checking a candidate costs one
//! pass over its table. Within a layer candidates appear in the order of
//! [`Formula`]'s `Ord`: `!a` at size 2, then `X`, `F`, `G` over the previous
//! layer, then `U`, `&`, `|` ordered by left child then right child. The
//! first separator met is therefore the least one in that order.
//!
//! In pruned mode a candidate whose table over the sample equals the table
//! of an earlier formula is dropped. Separation depends only on the table,
//! and since ids follow the formula order the kept representative is the
//! least formula of its class, which also lets `&` and `|` skip mirrored
//! pairs by comparing ids.

use std::collections::HashMap;
use std::ops::Range;
use std::sync::atomic::{AtomicUsize, Ordering};

use thiserror::Error;

use crate::formula::{Formula, Operator, OperatorSet, TraceSet};
use crate::par::{par_map, Parallelism};
use crate::sample::{LearnResult, Sample};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("enumeration stopped at size {size}: more than {limit} stored formulas")]
    ResourceExhausted { size: usize, limit: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactConfig {
    pub max_size: usize,
    /// Merge candidates with equal tables (observational equivalence).
    pub pruned: bool,
    pub parallelism: Parallelism,
    /// Upper bound on stored formulas across all layers.
    pub max_formulas: Option<usize>,
}

impl ExactConfig {
    pub fn new(max_size: usize) -> Self {
        ExactConfig { max_size, pruned: true, parallelism: Parallelism::Auto, max_formulas: None }
    }

    pub fn unpruned(mut self) -> Self {
        self.pruned = false;
        self
    }

    pub fn with_parallelism(mut self, parallelism: Parallelism) -> Self {
        self.parallelism = parallelism;
        self
    }

    pub fn with_max_formulas(mut self, limit: usize) -> Self {
        self.max_formulas = Some(limit);
        self
    }
}

/// Smallest separator of `s` in `LTL(ops)` with size at most `k_max`.
///
/// Unbounded memory; use [`learn_exact_with`] to cap the enumeration.
pub fn learn_exact(s: &Sample, ops: OperatorSet, k_max: usize, pruned: bool) -> LearnResult {
    let mut cfg = ExactConfig::new(k_max);
    cfg.pruned = pruned;
    learn_exact_with(s, ops, &cfg).expect("no formula limit configured")
}

pub fn learn_exact_with(s: &Sample, ops: OperatorSet, cfg: &ExactConfig) -> Result<LearnResult, ExactError> {
    if s.has_overlap() {
        return Ok(LearnResult::NoSeparatorExists);
    }
    let s = s.deduplicated();
    if cfg.max_size == 0 {
        return Ok(LearnResult::NoneWithinBound { bound: 0 });
    }
    if s.negative().is_empty() {
        return Ok(LearnResult::found(Formula::True));
    }
    if s.positive().is_empty() {
        return Ok(LearnResult::found(Formula::False));
    }
    let search = Search::new(&s, ops, cfg);
    search.run()
}

#[derive(Debug, Clone, Copy)]
enum Node {
    Letter(u32),
    NegLetter(u32),
    Next(u32),
    Eventually(u32),
    Globally(u32),
    Until(u32, u32),
    And(u32, u32),
    Or(u32, u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Unary {
    Next,
    Eventually,
    Globally,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Binary {
    Until,
    And,
    Or,
}

#[derive(Debug, Clone)]
enum Job {
    NegLetters,
    Unary(Unary, Range<u32>),
    Binary(Binary, Range<u32>, Range<u32>),
}

#[derive(Default)]
struct JobOutput {
    nodes: Vec<Node>,
    tables: Vec<u64>,
    separator: Option<Node>,
}

const CHUNK: u32 = 256;

#[inline]
fn table_hash(t: &[u64]) -> u64 {
    t.iter().fold(0xcbf2_9ce4_8422_2325u64, |h, &x| (h ^ x).wrapping_mul(0x0000_0100_0000_01b3).rotate_left(23))
}

struct Search<'a> {
    traces: TraceSet,
    ops: OperatorSet,
    cfg: &'a ExactConfig,
    pos_mask: Vec<u64>,
    neg_mask: Vec<u64>,
    nodes: Vec<Node>,
    tables: Vec<u64>,
    layers: Vec<Range<u32>>,
    seen: HashMap<u64, u32>,
    chain: Vec<u32>,
}

impl<'a> Search<'a> {
    fn new(s: &Sample, ops: OperatorSet, cfg: &'a ExactConfig) -> Self {
        let traces = s.traces();
        let p = s.positive().len();
        let pos_mask = traces.first_positions(0..p);
        let neg_mask = traces.first_positions(p..p + s.negative().len());
        Search {
            traces,
            ops,
            cfg,
            pos_mask,
            neg_mask,
            nodes: Vec::new(),
            tables: Vec::new(),
            // layer 0 is empty: no formula has size 0
            #[allow(clippy::single_range_in_vec_init)]
            layers: vec![0..0],
            seen: HashMap::new(),
            chain: Vec::new(),
        }
    }

    fn blocks(&self) -> usize {
        self.traces.blocks()
    }

    fn table(&self, id: u32) -> &[u64] {
        let b = self.blocks();
        &self.tables[id as usize * b..(id as usize + 1) * b]
    }

    fn separates(&self, t: &[u64]) -> bool {
        t.iter()
            .zip(&self.pos_mask)
            .zip(&self.neg_mask)
            .all(|((x, p), n)| x & p == *p && x & n == 0)
    }

    fn find(&self, t: &[u64]) -> bool {
        let Some(&first) = self.seen.get(&table_hash(t)) else {
            return false;
        };
        let mut id = first;
        loop {
            if self.table(id) == t {
                return true;
            }
            id = self.chain[id as usize];
            if id == u32::MAX {
                return false;
            }
        }
    }

    fn push(&mut self, node: Node, t: &[u64]) {
        let id = self.nodes.len() as u32;
        self.nodes.push(node);
        self.tables.extend_from_slice(t);
        let h = table_hash(t);
        let prev = self.seen.insert(h, id).unwrap_or(u32::MAX);
        self.chain.push(prev);
    }

    fn run(mut self) -> Result<LearnResult, ExactError> {
        let max = self.cfg.max_size;
        // size 1: letters
        let start = self.nodes.len() as u32;
        for li in 0..self.traces.letters().len() {
            let t = self.traces.letter_mask(li).to_vec();
            if self.separates(&t) {
                return Ok(LearnResult::found(self.formula(Node::Letter(li as u32))));
            }
            if max > 1 && (!self.cfg.pruned || !self.find(&t)) {
                self.push(Node::Letter(li as u32), &t);
            }
        }
        self.layers.push(start..self.nodes.len() as u32);

        for size in 2..=max {
            let store = size < max;
            let jobs = self.jobs(size);
            let best = AtomicUsize::new(usize::MAX);
            let this = &self;
            let outputs: Vec<JobOutput> = par_map(
                &jobs.iter().enumerate().collect::<Vec<_>>(),
                self.cfg.parallelism,
                |(i, job)| this.run_job(*i, job, store, &best),
            );
            let start = self.nodes.len() as u32;
            for out in outputs {
                if let Some(node) = out.separator {
                    return Ok(LearnResult::found(self.formula(node)));
                }
                if !store {
                    continue;
                }
                let b = self.blocks();
                for (k, node) in out.nodes.into_iter().enumerate() {
                    let t = &out.tables[k * b..(k + 1) * b];
                    if !self.cfg.pruned || !self.find(t) {
                        self.push(node, t);
                    }
                }
                if let Some(limit) = self.cfg.max_formulas {
                    if self.nodes.len() > limit {
                        return Err(ExactError::ResourceExhausted { size, limit });
                    }
                }
            }
            self.layers.push(start..self.nodes.len() as u32);
        }
        Ok(LearnResult::NoneWithinBound { bound: max })
    }

    fn jobs(&self, size: usize) -> Vec<Job> {
        let mut jobs = Vec::new();
        if size == 2 && self.ops.contains(Operator::Not) {
            jobs.push(Job::NegLetters);
        }
        let chunks = |r: &Range<u32>| {
            let r = r.clone();
            (r.start..r.end).step_by(CHUNK as usize).map(move |s| s..(s + CHUNK).min(r.end))
        };
        for (op, u) in [
            (Operator::Next, Unary::Next),
            (Operator::Eventually, Unary::Eventually),
            (Operator::Globally, Unary::Globally),
        ] {
            if self.ops.contains(op) {
                jobs.extend(chunks(&self.layers[size - 1]).map(|c| Job::Unary(u, c)));
            }
        }
        for (op, b) in [(Operator::Until, Binary::Until), (Operator::And, Binary::And), (Operator::Or, Binary::Or)] {
            if !self.ops.contains(op) || size < 3 {
                continue;
            }
            for ls in 1..=size - 2 {
                let rs = size - 1 - ls;
                // left ids all exceed right ids, so every pair is a mirror
                if b != Binary::Until && self.cfg.pruned && ls > rs {
                    continue;
                }
                let right = self.layers[rs].clone();
                if right.is_empty() {
                    continue;
                }
                jobs.extend(chunks(&self.layers[ls]).map(|c| Job::Binary(b, c, right.clone())));
            }
        }
        jobs
    }

    fn run_job(&self, index: usize, job: &Job, store: bool, best: &AtomicUsize) -> JobOutput {
        let b = self.blocks();
        let mut out = JobOutput::default();
        let mut local: HashMap<u64, Vec<usize>> = HashMap::new();
        let mut t = vec![0u64; b];
        let mut emit = |out: &mut JobOutput, node: Node, t: &[u64]| -> bool {
            if self.separates(t) {
                out.separator = Some(node);
                best.fetch_min(index, Ordering::Relaxed);
                return true;
            }
            if store {
                if self.cfg.pruned {
                    if self.find(t) {
                        return false;
                    }
                    let h = table_hash(t);
                    let bucket = local.entry(h).or_default();
                    if bucket.iter().any(|&k| &out.tables[k * b..(k + 1) * b] == t) {
                        return false;
                    }
                    bucket.push(out.nodes.len());
                }
                out.nodes.push(node);
                out.tables.extend_from_slice(t);
            }
            false
        };
        let aborted = || best.load(Ordering::Relaxed) < index;
        match job {
            Job::NegLetters => {
                for li in 0..self.traces.letters().len() {
                    self.traces.negated_letter_into(li, &mut t);
                    if emit(&mut out, Node::NegLetter(li as u32), &t) {
                        break;
                    }
                }
            }
            Job::Unary(op, range) => {
                for c in range.clone() {
                    if aborted() {
                        break;
                    }
                    let x = self.table(c);
                    let node = match op {
                        Unary::Next => {
                            self.traces.next_into(x, &mut t);
                            Node::Next(c)
                        }
                        Unary::Eventually => {
                            self.traces.eventually_into(x, &mut t);
                            Node::Eventually(c)
                        }
                        Unary::Globally => {
                            self.traces.globally_into(x, &mut t);
                            Node::Globally(c)
                        }
                    };
                    if emit(&mut out, node, &t) {
                        break;
                    }
                }
            }
            Job::Binary(op, left, right) => {
                'outer: for l in left.clone() {
                    if aborted() {
                        break;
                    }
                    let x = self.table(l);
                    for r in right.clone() {
                        if *op != Binary::Until && self.cfg.pruned && l >= r {
                            continue;
                        }
                        let y = self.table(r);
                        let node = match op {
                            Binary::Until => {
                                self.traces.until_into(x, y, &mut t);
                                Node::Until(l, r)
                            }
                            Binary::And => {
                                for k in 0..b {
                                    t[k] = x[k] & y[k];
                                }
                                Node::And(l, r)
                            }
                            Binary::Or => {
                                for k in 0..b {
                                    t[k] = x[k] | y[k];
                                }
                                Node::Or(l, r)
                            }
                        };
                        if emit(&mut out, node, &t) {
                            break 'outer;
                        }
                    }
                }
            }
        }
        out
    }

    fn formula(&self, node: Node) -> Formula {
        let sub = |id: u32| self.formula(self.nodes[id as usize]);
        match node {
            Node::Letter(i) => Formula::Letter(self.traces.letters()[i as usize].clone()),
            Node::NegLetter(i) => Formula::NegLetter(self.traces.letters()[i as usize].clone()),
            Node::Next(c) => Formula::next(sub(c)),
            Node::Eventually(c) => Formula::eventually(sub(c)),
            Node::Globally(c) => Formula::globally(sub(c)),
            Node::Until(l, r) => Formula::until(sub(l), sub(r)),
            Node::And(l, r) => Formula::and(sub(l), sub(r)),
            Node::Or(l, r) => Formula::or(sub(l), sub(r)),
        }
    }
}
