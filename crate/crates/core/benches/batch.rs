//! Sequential against data-parallel execution for batch reduction and ball
//! exploration.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use tame_core::complex::{explore, ExploreConfig};
use tame_core::sampling::{Sampler, WordShape};
use tame_core::tame::{reduce_batch, Budget, TameAuto};
use tame_core::{ExecMode, Poly, Q};

const BATCH: usize = 64;
const MODES: [ExecMode; 2] = [ExecMode::Sequential, ExecMode::Parallel];

fn sampled_autos() -> Vec<TameAuto<Q>> {
    let mut sampler = Sampler::new(1);
    let shape = WordShape::default();
    (0..BATCH).map(|_| sampler.word::<Q>(&shape).1).collect()
}

fn bench_reduce(c: &mut Criterion) {
    let autos = sampled_autos();
    let budget = Budget::default();
    let mut group = c.benchmark_group("reduce_batch");
    for mode in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(format!("{mode:?}")), &mode, |b, &mode| {
            b.iter(|| reduce_batch(black_box(&autos), &budget, mode))
        });
    }
    group.finish();
}

fn bench_explore(c: &mut Criterion) {
    let sample: Vec<Poly<Q>> = ["x1", "x3", "x1^2", "x1*x3", "x3^2"].iter().map(|s| Poly::parse(s).unwrap()).collect();
    let mut group = c.benchmark_group("explore_depth_2");
    group.sample_size(10);
    for mode in MODES {
        let cfg = ExploreConfig::new(2, sample.clone()).with_mode(mode);
        group.bench_with_input(BenchmarkId::from_parameter(format!("{mode:?}")), &cfg, |b, cfg| {
            b.iter(|| explore(black_box(cfg)))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_reduce, bench_explore);
criterion_main!(benches);
