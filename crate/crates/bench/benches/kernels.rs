use criterion::{criterion_group, criterion_main, Criterion};
use srg_bench::{paley13, petersen};
use srg_core::{canonical_form, enumerate_family, parse_graph6, to_graph6};
use std::hint::black_box;

fn bench_kernels(c: &mut Criterion) {
    let p13 = paley13();
    let pet = petersen();

    c.bench_function("triangle_count_paley13", |b| {
        b.iter(|| black_box(p13.triangle_count()))
    });
    c.bench_function("canonical_form_paley13", |b| {
        b.iter(|| black_box(canonical_form(&p13)))
    });
    c.bench_function("canonical_form_petersen", |b| {
        b.iter(|| black_box(canonical_form(&pet)))
    });
    c.bench_function("graph6_round_trip", |b| {
        b.iter(|| black_box(parse_graph6(&to_graph6(&p13)).unwrap()))
    });
    c.bench_function("enumerate_family_k1000", |b| {
        b.iter(|| black_box(enumerate_family(1, 2, 1000)))
    });
}

criterion_group!(benches, bench_kernels);
criterion_main!(benches);
