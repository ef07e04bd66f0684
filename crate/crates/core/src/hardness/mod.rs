//! Benchmark generators from NP-hard problems. Each maps a hitting-set or
//! set-cover instance to a learning instance with a size threshold, and
//! attaches a separator certifying the yes-direction when the budget
//! allows one.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::json;
use thiserror::Error;

use crate::fattern::{f_chain, g_chain, Fattern};
use crate::formula::{Formula, OperatorSet, Symbol, Word};
use crate::pattern::Pattern;
use crate::sample::{separates, Sample, SampleError};

pub mod oracle;

pub use oracle::{solve_hitting_set, solve_set_cover, OracleError, Solution, ORACLE_LIMIT};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HardnessError {
    #[error("set {set} is empty")]
    EmptySet { set: usize },
    #[error("set {set} contains {element}, outside [1, {bound}]")]
    OutOfRange { set: usize, element: usize, bound: usize },
    #[error("the ground set is empty")]
    EmptyGround,
    #[error("padding needs exactly one word on the {0} side")]
    NotSingle(&'static str),
    #[error("padding needs all words of the same length")]
    UnequalLengths,
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Sample(#[from] SampleError),
}

/// Sets `C_1..C_n` over `[1, ground]` and a budget `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HittingSetInstance {
    pub ground: usize,
    pub sets: Vec<BTreeSet<usize>>,
    pub budget: usize,
}

impl HittingSetInstance {
    pub fn new(ground: usize, sets: Vec<BTreeSet<usize>>, budget: usize) -> Result<Self, HardnessError> {
        let inst = HittingSetInstance { ground, sets, budget };
        inst.validate()?;
        Ok(inst)
    }

    /// Non-empty sets inside a non-empty ground set.
    pub fn validate(&self) -> Result<(), HardnessError> {
        if self.ground == 0 {
            return Err(HardnessError::EmptyGround);
        }
        for (i, c) in self.sets.iter().enumerate() {
            if c.is_empty() {
                return Err(HardnessError::EmptySet { set: i + 1 });
            }
            check_range(c, i, self.ground)?;
        }
        Ok(())
    }

    pub fn solve(&self) -> Result<Solution, HardnessError> {
        Ok(solve_hitting_set(self.ground, &self.sets)?.expect("validated sets are non-empty"))
    }
}

/// Sets `S_1..S_l` over the universe `[1, universe]` and a budget `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetCoverInstance {
    pub universe: usize,
    pub sets: Vec<BTreeSet<usize>>,
    pub budget: usize,
}

impl SetCoverInstance {
    pub fn new(universe: usize, sets: Vec<BTreeSet<usize>>, budget: usize) -> Result<Self, HardnessError> {
        let inst = SetCoverInstance { universe, sets, budget };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<(), HardnessError> {
        for (i, s) in self.sets.iter().enumerate() {
            check_range(s, i, self.universe)?;
        }
        Ok(())
    }

    pub fn solve(&self) -> Result<Option<Solution>, HardnessError> {
        Ok(solve_set_cover(self.universe, &self.sets)?)
    }
}

fn check_range(set: &BTreeSet<usize>, index: usize, bound: usize) -> Result<(), HardnessError> {
    match set.iter().find(|&&e| e == 0 || e > bound) {
        Some(&element) => Err(HardnessError::OutOfRange { set: index + 1, element, bound }),
        None => Ok(()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reduction {
    HittingFor,
    SetcoverXand,
    HittingFand,
    Fixed3Fand,
    Fixed3Gor,
}

impl Reduction {
    pub fn as_str(self) -> &'static str {
        match self {
            Reduction::HittingFor => "hitting-for",
            Reduction::SetcoverXand => "setcover-xand",
            Reduction::HittingFand => "hitting-fand",
            Reduction::Fixed3Fand => "fixed3-fand",
            Reduction::Fixed3Gor => "fixed3-gor",
        }
    }
}

impl fmt::Display for Reduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Instance {
    Hitting(HittingSetInstance),
    SetCover(SetCoverInstance),
}

/// Constants derived while building a benchmark.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constants {
    /// Budget of the source instance (`k'` for the fixed-alphabet ones).
    pub budget: usize,
    /// Optimum of the source instance, `None` when infeasible.
    pub optimum: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(rename = "M", skip_serializing_if = "Option::is_none")]
    pub big_m: Option<usize>,
}

/// A formula offered as a witness that did not pass the separation check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimedWitness {
    pub formula: Formula,
    pub size: usize,
    pub separates: bool,
}

/// A learning instance with its threshold `K`. `witness`, when present,
/// separates the sample and has size at most `K`.
#[derive(Debug, Clone, Serialize)]
pub struct GeneratedBenchmark {
    pub reduction: Reduction,
    pub instance: Instance,
    pub sample: Sample,
    pub fragment: OperatorSet,
    pub threshold: usize,
    pub witness: Option<Formula>,
    pub claimed_witness: Option<ClaimedWitness>,
    pub constants: Constants,
    /// The source instance has no solution at any budget.
    pub infeasible: bool,
}

impl GeneratedBenchmark {
    fn new(reduction: Reduction, instance: Instance, sample: Sample, fragment: &str, threshold: usize) -> Self {
        GeneratedBenchmark {
            reduction,
            instance,
            sample,
            fragment: OperatorSet::parse(fragment).expect("static operator list"),
            threshold,
            witness: None,
            claimed_witness: None,
            constants: Constants::default(),
            infeasible: false,
        }
    }

    /// Keeps `f` as the witness only if it separates and fits the threshold.
    fn offer_witness(&mut self, f: Formula) {
        let ok = separates(&f, &self.sample);
        if ok && f.size() <= self.threshold {
            self.witness = Some(f);
        } else {
            self.claimed_witness = Some(ClaimedWitness { size: f.size(), separates: ok, formula: f });
        }
    }

    /// Manifest pointing at a separately written sample file.
    pub fn manifest(&self, sample_file: &str) -> serde_json::Value {
        json!({
            "reduction": self.reduction,
            "instance": self.instance,
            "sample_file": sample_file,
            "fragment": self.fragment,
            "K": self.threshold,
            "witness": self.witness.as_ref().map(ToString::to_string),
            "witness_size": self.witness.as_ref().map(Formula::size),
            "claimed_witness": self.claimed_witness.as_ref().map(|c| json!({
                "formula": c.formula.to_string(),
                "size": c.size,
                "separates": c.separates,
            })),
            "constants": self.constants,
            "infeasible": self.infeasible,
        })
    }
}

fn sym(name: &str) -> Symbol {
    Symbol::new(name).expect("generated letter names are valid")
}

fn word(letters: impl IntoIterator<Item = Symbol>) -> Word {
    Word::new(letters.into_iter().collect())
}

/// Unbounded alphabet, `{F, or}`. Letters `a_i, b_i` per ground element
/// `i`; `u_j` spells `a_i` at the positions of `C_j` and `b_i` elsewhere,
/// the negative is `b_1..b_l`. Threshold `2k`.
pub fn gen_hitting_for(inst: &HittingSetInstance) -> Result<GeneratedBenchmark, HardnessError> {
    inst.validate()?;
    let l = inst.ground;
    let a = |i: usize| sym(&format!("a{i}"));
    let b = |i: usize| sym(&format!("b{i}"));
    let alphabet = (1..=l).map(a).chain((1..=l).map(b)).collect();
    let positive = inst
        .sets
        .iter()
        .map(|c| word((1..=l).map(|i| if c.contains(&i) { a(i) } else { b(i) })))
        .collect();
    let negative = vec![word((1..=l).map(b))];
    let sample = Sample::new(alphabet, positive, negative)?;
    let mut bench =
        GeneratedBenchmark::new(Reduction::HittingFor, Instance::Hitting(inst.clone()), sample, "F,or", 2 * inst.budget);
    let sol = inst.solve()?;
    bench.constants = Constants { budget: inst.budget, optimum: Some(sol.size), ..Constants::default() };
    if sol.size > 0 && sol.size <= inst.budget {
        bench.offer_witness(Formula::eventually(Formula::disjunction(sol.chosen.iter().map(|&i| Formula::letter(&a(i))))));
    }
    Ok(bench)
}

/// Threshold convention of [`gen_setcover_xand`]: a cover of size `k` plus
/// the forced last position gives a pattern of size `l + 1 + 2k`.
pub fn setcover_threshold(l: usize, k: usize) -> usize {
    l + 1 + 2 * k
}

/// `{X, and}` over `{a, b}`. `u = a^(l+1)`; `v_j` has `b` at position `i`
/// iff `j ∈ S_i`, then a final `a`; plus `a^l b`. An uncoverable instance
/// yields some `v_j = u`, so the sample has no separator.
pub fn gen_setcover_xand(inst: &SetCoverInstance) -> Result<GeneratedBenchmark, HardnessError> {
    inst.validate()?;
    let l = inst.sets.len();
    let (a, b) = (sym("a"), sym("b"));
    let u = word(std::iter::repeat_n(a.clone(), l + 1));
    let mut negative: Vec<Word> = (1..=inst.universe)
        .map(|j| {
            word(inst.sets.iter().map(|s| if s.contains(&j) { b.clone() } else { a.clone() }).chain([a.clone()]))
        })
        .collect();
    negative.push(word(std::iter::repeat_n(a.clone(), l).chain([b.clone()])));
    let sample = Sample::with_overlap(vec![a.clone(), b], vec![u], negative)?;
    let mut bench = GeneratedBenchmark::new(
        Reduction::SetcoverXand,
        Instance::SetCover(inst.clone()),
        sample,
        "X,and",
        setcover_threshold(l, inst.budget),
    );
    let sol = inst.solve()?;
    bench.constants = Constants { budget: inst.budget, optimum: sol.as_ref().map(|s| s.size), ..Constants::default() };
    bench.infeasible = sol.is_none();
    if let Some(sol) = sol.filter(|s| s.size <= inst.budget) {
        let mut positions = sol.chosen.clone();
        positions.push(l + 1);
        let pattern = Pattern::new(positions, vec![a; sol.size + 1]).expect("cover indices are increasing and below l + 1");
        debug_assert_eq!(pattern.size(), setcover_threshold(l, sol.size));
        bench.offer_witness(pattern.to_formula());
    }
    Ok(bench)
}

/// Unbounded alphabet `[0, m]`, `{F, and}`. `u = 0 1 .. m`; `v_j` is `0`
/// followed by the complement of `C_j` in increasing order. Threshold
/// `3k - 1`.
pub fn gen_hitting_fand(inst: &HittingSetInstance) -> Result<GeneratedBenchmark, HardnessError> {
    inst.validate()?;
    let m = inst.ground;
    let d = |i: usize| sym(&i.to_string());
    let alphabet = (0..=m).map(d).collect();
    let u = word((0..=m).map(d));
    let negative = inst.sets.iter().map(|c| word([d(0)].into_iter().chain((1..=m).filter(|i| !c.contains(i)).map(d)))).collect();
    let sample = Sample::new(alphabet, vec![u], negative)?;
    let threshold = (3 * inst.budget).saturating_sub(1);
    let mut bench = GeneratedBenchmark::new(Reduction::HittingFand, Instance::Hitting(inst.clone()), sample, "F,and", threshold);
    let sol = inst.solve()?;
    bench.constants = Constants { budget: inst.budget, optimum: Some(sol.size), m: Some(m), ..Constants::default() };
    if sol.size > 0 && sol.size <= inst.budget {
        let f = Fattern::new(sol.chosen.iter().map(|&i| d(i)).collect(), false).expect("distinct letters");
        bench.offer_witness(f.to_formula());
    }
    Ok(bench)
}

/// `M = 3m + 2`.
pub fn fixed3_big_m(m: usize) -> usize {
    3 * m + 2
}

fn ab(times: usize) -> impl Iterator<Item = Symbol> {
    std::iter::repeat_n([sym("a"), sym("b")], times).flatten()
}

/// Words of the fixed-alphabet construction over `{a, b, c}`:
/// `u = c ((ab)^(M+1) c)^m` and `v_i = c w_(i,1) c .. w_(i,m) c` with
/// `w_(i,j) = (ab)^M` if `j ∈ T_i`, else `(ab)^(M+1)`.
///
/// `u` carries a leading `c` so that the witness word (which starts with
/// `c`) embeds into it.
pub fn fixed3_words(m: usize, sets: &[BTreeSet<usize>]) -> (Word, Vec<Word>) {
    let big_m = fixed3_big_m(m);
    let c = sym("c");
    let blocks = |short: &dyn Fn(usize) -> bool| {
        let mut w = vec![c.clone()];
        for j in 1..=m {
            w.extend(ab(if short(j) { big_m } else { big_m + 1 }));
            w.push(c.clone());
        }
        Word::new(w)
    };
    let u = blocks(&|_| false);
    let v = sets.iter().map(|t| blocks(&|j| t.contains(&j))).collect();
    (u, v)
}

/// `w = c z_1 c .. z_m c` with `z_j = (ab)^(M+1)` for `j` in `hitting`, `ab`
/// otherwise.
pub fn fixed3_witness_word(m: usize, hitting: &[usize]) -> Vec<Symbol> {
    let big_m = fixed3_big_m(m);
    let mut w = vec![sym("c")];
    for j in 1..=m {
        w.extend(ab(if hitting.contains(&j) { big_m + 1 } else { 1 }));
        w.push(sym("c"));
    }
    w
}

/// Nested-F chain over the witness word, size `3p - 1`.
pub fn fixed3_fand_witness(m: usize, hitting: &[usize]) -> Formula {
    let letters: Vec<Formula> = fixed3_witness_word(m, hitting).iter().map(Formula::letter).collect();
    f_chain(&letters)
}

/// Nested-G chain over the barred witness letters with `a̅ = b`, `b̅ = a`,
/// `c̅ = a | b`, size `3p - 1 + 2m + 2`.
pub fn fixed3_gor_witness(m: usize, hitting: &[usize]) -> Formula {
    let bar = |x: &Symbol| match x.as_str() {
        "a" => Formula::atom("b"),
        "b" => Formula::atom("a"),
        _ => Formula::or(Formula::atom("a"), Formula::atom("b")),
    };
    let barred: Vec<Formula> = fixed3_witness_word(m, hitting).iter().map(bar).collect();
    g_chain(&barred)
}

/// Claimed upper bound `6kM + 9m + 2`, reached when `k = k'`.
pub fn fixed3_fand_threshold(m: usize, k: usize) -> usize {
    6 * k * fixed3_big_m(m) + 9 * m + 2
}

/// `6kM + 11m + 4`.
pub fn fixed3_gor_threshold(m: usize, k: usize) -> usize {
    6 * k * fixed3_big_m(m) + 11 * m + 4
}

/// Lower bound `k(6M - 3)` on any separator, for either polarity.
pub fn fixed3_lower_bound(m: usize, k: usize) -> usize {
    k * (6 * fixed3_big_m(m) - 3)
}

fn gen_fixed3(inst: &HittingSetInstance, dual: bool) -> Result<GeneratedBenchmark, HardnessError> {
    inst.validate()?;
    let m = inst.ground;
    let (u, v) = fixed3_words(m, &inst.sets);
    let alphabet = ["a", "b", "c"].map(sym).to_vec();
    let sol = inst.solve()?;
    let (reduction, sample, fragment, threshold, witness) = if dual {
        let s = Sample::new(alphabet, v, vec![u])?;
        (Reduction::Fixed3Gor, s, "G,or", fixed3_gor_threshold(m, inst.budget), fixed3_gor_witness(m, &sol.chosen))
    } else {
        let s = Sample::new(alphabet, vec![u], v)?;
        (Reduction::Fixed3Fand, s, "F,and", fixed3_fand_threshold(m, inst.budget), fixed3_fand_witness(m, &sol.chosen))
    };
    let mut bench = GeneratedBenchmark::new(reduction, Instance::Hitting(inst.clone()), sample, fragment, threshold);
    bench.constants =
        Constants { budget: inst.budget, optimum: Some(sol.size), m: Some(m), big_m: Some(fixed3_big_m(m)) };
    if sol.size <= inst.budget {
        bench.offer_witness(witness);
    }
    Ok(bench)
}

/// Alphabet `{a, b, c}`, `{F, and}`; positive `u`, negatives `v_i`, sets
/// `T_i` over `[1, m]`, threshold `6k'M + 9m + 2`.
pub fn gen_hitting_fand_fixed3(inst: &HittingSetInstance) -> Result<GeneratedBenchmark, HardnessError> {
    gen_fixed3(inst, false)
}

/// Same words with the roles swapped, `{G, or}`, threshold
/// `6k'M + 11m + 4`.
pub fn gen_hitting_gor_fixed3(inst: &HittingSetInstance) -> Result<GeneratedBenchmark, HardnessError> {
    gen_fixed3(inst, true)
}

/// Result of [`pad_for_x_fragments`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Padding {
    /// `big_m` is the size of the prefix formula of the single word, which
    /// also bounds the minimal separator.
    Padded { sample: Sample, big_m: usize },
    /// The single word also occurs on the other side.
    NoSeparator,
}

/// Pads a one-positive sample with equal-length words so that `F` and `G`
/// stop helping: `u' = u a^M`, `v'_i = v_i a^M`, positive
/// `(u' v'_1 .. v'_n)^(M+1)`, negatives `v'_i .. v'_n (u' v'_1 .. v'_n)^M`.
/// With `dual` the single word is the negative one.
pub fn pad_for_x_fragments(s: &Sample, dual: bool) -> Result<Padding, HardnessError> {
    if dual {
        return Ok(match pad_for_x_fragments(&s.swapped(), false)? {
            Padding::Padded { sample, big_m } => Padding::Padded { sample: sample.swapped(), big_m },
            Padding::NoSeparator => Padding::NoSeparator,
        });
    }
    let [u] = s.positive() else {
        return Err(HardnessError::NotSingle("positive"));
    };
    if s.words().any(|w| w.len() != u.len()) {
        return Err(HardnessError::UnequalLengths);
    }
    if s.negative().contains(u) {
        return Ok(Padding::NoSeparator);
    }
    let big_m = Formula::conjunction(u.iter().enumerate().map(|(i, c)| Formula::next_n(i, Formula::letter(c)))).size();
    let pad = &s.alphabet()[0];
    let u1 = u.padded(pad, big_m);
    let v1: Vec<Word> = s.negative().iter().map(|v| v.padded(pad, big_m)).collect();
    let block = Word::concat(std::iter::once(&u1).chain(&v1));
    let positive = block.repeat(big_m + 1);
    let tail = block.repeat(big_m);
    let negative = (0..v1.len()).map(|i| Word::concat(v1[i..].iter().chain([&tail]))).collect();
    let sample = Sample::new(s.alphabet().to_vec(), vec![positive], negative)?;
    Ok(Padding::Padded { sample, big_m })
}
