use std::hint::black_box;

use ca2d::sweep::{sweep, sweep_iteration, SweepConfig, SweepMode};
use ca2d_bench::scatter;
use criterion::{criterion_group, criterion_main, Criterion};

fn bench_iteration(c: &mut Criterion) {
    let grid = scatter(100, 80, 200);
    let guarded = SweepConfig::new((40, 40), 0, SweepMode::Guarded);
    let xor = SweepConfig::new((40, 40), 0, SweepMode::Xor);
    c.bench_function("sweep_iteration/guarded/100x80", |b| {
        b.iter(|| sweep_iteration(black_box(&grid), &guarded).unwrap())
    });
    c.bench_function("sweep_iteration/xor/100x80", |b| {
        b.iter(|| sweep_iteration(black_box(&grid), &xor).unwrap())
    });
}

fn bench_full_run(c: &mut Criterion) {
    let grid = scatter(100, 80, 200);
    let cfg = SweepConfig::new((40, 40), 200, SweepMode::Guarded);
    c.bench_function("sweep/guarded/100x80/200_iters", |b| {
        b.iter(|| sweep(black_box(&grid), &cfg).unwrap())
    });
}

criterion_group!(benches, bench_iteration, bench_full_run);
criterion_main!(benches);
