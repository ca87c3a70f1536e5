use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use planepart_bench::diagram_near;
use planepart_core::oracle::exact_counts;
use planepart_core::sampler::{gamma_m, sample_partitions};
use planepart_core::{pak_forward, RandomSource, TargetSpec};

fn transform(c: &mut Criterion) {
    let mut g = c.benchmark_group("pak_forward");
    for n in [10_000u64, 100_000, 1_000_000] {
        let d = diagram_near(n, 1);
        g.bench_with_input(BenchmarkId::from_parameter(n), &d, |b, d| {
            b.iter(|| pak_forward(black_box(d)))
        });
    }
    g.finish();
}

fn free_sampler(c: &mut Criterion) {
    let mut g = c.benchmark_group("gamma_m");
    for x in [0.9, 0.99] {
        let mut rng = RandomSource::new(2, 0);
        g.bench_with_input(BenchmarkId::from_parameter(x), &x, |b, &x| {
            b.iter(|| gamma_m(x, &mut rng).unwrap())
        });
    }
    g.finish();
}

fn targeted(c: &mut Criterion) {
    let mut g = c.benchmark_group("sample_partitions_approx_5pct");
    g.sample_size(10);
    for n in [10_000u64, 100_000] {
        let spec = TargetSpec::approximate(n, 0.05).unwrap();
        let mut rng = RandomSource::new(3, 0);
        g.bench_with_input(BenchmarkId::from_parameter(n), &spec, |b, spec| {
            b.iter(|| sample_partitions(spec, &mut rng, &Default::default()).unwrap())
        });
    }
    g.finish();
}

fn counts(c: &mut Criterion) {
    c.bench_function("exact_counts_1000", |b| {
        b.iter(|| exact_counts(black_box(1000)))
    });
}

criterion_group!(benches, transform, free_sampler, targeted, counts);
criterion_main!(benches);
