// SPDX-License-Identifier: MIT OR Apache-2.0

use std::hint::black_box;
use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use kseg::*;
use rayon::{ThreadPool, ThreadPoolBuilder};

fn pools() -> Vec<(&'static str, ThreadPool)> {
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
    vec![
        ("serial", ThreadPoolBuilder::new().num_threads(1).build().unwrap()),
        ("parallel", ThreadPoolBuilder::new().num_threads(threads).build().unwrap()),
    ]
}

fn signal(n: usize, dim: usize, k: usize) -> Signal {
    generate(&SynthSpec { n, dim, k, seed: 7, ..SynthSpec::default() }).unwrap().0
}

fn bench_multi_init(c: &mut Criterion) {
    let s = signal(4000, 8, 5);
    let p = build_prefix_stats(&s);
    let cfg = LmConfig::default();
    let mut group = c.benchmark_group("lm_multi_init_q20");
    for (name, pool) in pools() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| pool.install(|| lm_multi_init(black_box(&s), &p, 5, 20, &cfg).unwrap()))
        });
    }
    group.finish();
}

fn bench_segment_neighborhood(c: &mut Criterion) {
    let s = signal(600, 4, 4);
    let p = build_prefix_stats(&s);
    let mut group = c.benchmark_group("segment_neighborhood");
    for (name, pool) in pools() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| pool.install(|| segment_neighborhood(black_box(&s), &p, 4, 2).unwrap()))
        });
    }
    group.finish();
}

fn bench_corpus(c: &mut Criterion) {
    let base = SynthSpec::default();
    let mut group = c.benchmark_group("generate_corpus");
    for (name, pool) in pools() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| pool.install(|| generate_corpus(&base, 32, 500..=4000, 2..=8, 2..=8, black_box(3)).unwrap()))
        });
    }
    group.finish();
}

fn config() -> Criterion {
    Criterion::default().sample_size(10).warm_up_time(Duration::from_secs(1)).measurement_time(Duration::from_secs(5))
}

criterion_group!(name = benches; config = config(); targets = bench_multi_init, bench_segment_neighborhood, bench_corpus);
criterion_main!(benches);
