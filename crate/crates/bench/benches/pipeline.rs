use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use flagorbit_bench::{classify, generic_e};
use flagorbit_core::census::run_census;
use flagorbit_core::ptype::enumerate;

fn bench_enumerate(c: &mut Criterion) {
    c.bench_function("enumerate 4x6", |b| b.iter(|| enumerate(black_box(4), black_box(6))));
    c.bench_function("enumerate 8x8", |b| b.iter(|| enumerate(black_box(8), black_box(8))));
}

fn bench_classify(c: &mut Criterion) {
    let small = generic_e(6, 3);
    let large = generic_e(10, 5);
    c.bench_function("classify E(6,3)", |b| b.iter(|| classify(black_box(&small)).unwrap()));
    c.bench_function("classify E(10,5)", |b| b.iter(|| classify(black_box(&large)).unwrap()));
}

fn bench_census(c: &mut Criterion) {
    let mut g = c.benchmark_group("census");
    g.sample_size(10);
    g.bench_function("2x4 over F3", |b| b.iter(|| run_census(2, 4, 3).unwrap()));
    g.bench_function("3x4 over F2", |b| b.iter(|| run_census(3, 4, 2).unwrap()));
    g.finish();
}

criterion_group!(benches, bench_enumerate, bench_classify, bench_census);
criterion_main!(benches);
