use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ltl_learn::exact::{learn_exact_with, ExactConfig};
use ltl_learn::pattern::greedy_approx_xand;
use ltl_learn::{OperatorSet, Parallelism, Sample, Symbol, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_sample(seed: u64, words: usize, len: usize) -> Sample {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let letters: Vec<Symbol> = ["a", "b", "c"].iter().map(|c| Symbol::new(c).unwrap()).collect();
    let mut word = || Word::new((0..len).map(|_| letters[rng.gen_range(0..3)].clone()).collect());
    let mut pos: Vec<Word> = Vec::new();
    let mut neg: Vec<Word> = Vec::new();
    while pos.len() + neg.len() < words {
        let w = word();
        if pos.contains(&w) || neg.contains(&w) {
            continue;
        }
        if pos.len() <= neg.len() { pos.push(w) } else { neg.push(w) }
    }
    Sample::new(letters.clone(), pos, neg).unwrap()
}

/// Exact search with a fixed size bound, sequential against the rayon pool.
fn exact_search(c: &mut Criterion) {
    let ops = OperatorSet::parse("F,G,X,and,or").unwrap();
    let s = random_sample(11, 12, 8);
    let mut group = c.benchmark_group("exact_search");
    group.sample_size(10);
    for k in [6, 7] {
        for (name, par) in [("sequential", Parallelism::Sequential), ("parallel", Parallelism::Auto)] {
            let cfg = ExactConfig::new(k).with_parallelism(par);
            group.bench_with_input(BenchmarkId::new(name, k), &cfg, |b, cfg| {
                b.iter(|| learn_exact_with(&s, ops, cfg).unwrap())
            });
        }
    }
    group.finish();
}

/// Greedy pattern learner as the word length grows.
fn greedy_scaling(c: &mut Criterion) {
    let mut group = c.benchmark_group("greedy_xand");
    for len in [16, 32, 64, 128] {
        let s = random_sample(3, 16, len);
        group.bench_with_input(BenchmarkId::from_parameter(len), &s, |b, s| b.iter(|| greedy_approx_xand(s)));
    }
    group.finish();
}

criterion_group!(benches, exact_search, greedy_scaling);
criterion_main!(benches);
