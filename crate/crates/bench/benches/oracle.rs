use criterion::{criterion_group, criterion_main, Criterion};
use srg_core::{exhaustive_search, SrgParams};
use std::hint::black_box;

fn bench_search(c: &mut Criterion) {
    let mut group = c.benchmark_group("exhaustive_search");
    group.sample_size(20);
    group.bench_function("paley9_seeded", |b| {
        b.iter(|| black_box(exhaustive_search(&SrgParams::new(9, 4, 1, 2), true, 1).unwrap()))
    });
    group.bench_function("petersen_unseeded", |b| {
        b.iter(|| black_box(exhaustive_search(&SrgParams::new(10, 3, 0, 1), false, 1).unwrap()))
    });
    group.sample_size(10);
    group.bench_function("srg_19_6_1_2_seeded", |b| {
        b.iter(|| black_box(exhaustive_search(&SrgParams::new(19, 6, 1, 2), true, 1).unwrap()))
    });
    group.finish();
}

criterion_group!(benches, bench_search);
criterion_main!(benches);
