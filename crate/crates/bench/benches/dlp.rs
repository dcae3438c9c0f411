//! Discrete logarithm solves after precomputation, and reduction to the
//! canonical representative.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use graphjac::instance::{random_below, random_divisor};
use graphjac::{analyze, dlp_cyclic, dlp_general, families, DlpInstance, JacobianStructure, MultiGraph};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::hint::black_box;

fn instance(s: &JacobianStructure, seed: u64) -> DlpInstance<'_> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = random_divisor(s.vertex_count(), 3, &mut rng);
    let secret = random_below(s.group_order(), &mut rng);
    let target = s.bounded_representative(&base.scale(&secret));
    DlpInstance::new(s, base, target).unwrap()
}

fn cyclic_scaling(c: &mut Criterion) {
    let mut group = c.benchmark_group("dlp_cyclic/cycle");
    group.sample_size(20);
    for n in [100, 200, 400] {
        let s = analyze(&families::cycle(n));
        let inst = instance(&s, n as u64);
        group.bench_with_input(BenchmarkId::from_parameter(n), &inst, |b, inst| {
            b.iter(|| dlp_cyclic(black_box(inst)).unwrap())
        });
    }
    group.finish();
}

fn general(c: &mut Criterion) {
    let graphs: [(&str, MultiGraph); 3] = [
        ("K12", families::complete(12)),
        ("W40", families::wheel(40)),
        ("C200", families::cycle(200)),
    ];
    let mut group = c.benchmark_group("dlp_general");
    group.sample_size(20);
    for (name, g) in graphs {
        let s = analyze(&g);
        let inst = instance(&s, 7);
        group.bench_with_input(BenchmarkId::from_parameter(name), &inst, |b, inst| {
            b.iter(|| dlp_general(black_box(inst)).unwrap())
        });
    }
    group.finish();
}

fn reduce(c: &mut Criterion) {
    let mut group = c.benchmark_group("reduce");
    group.sample_size(10);
    for n in [50, 200] {
        let s = analyze(&families::cycle(n));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let d = random_divisor(n, 1000, &mut rng);
        group.bench_with_input(BenchmarkId::new("cycle", n), &d, |b, d| b.iter(|| s.reduce(black_box(d))));
    }
    group.finish();
}

criterion_group!(benches, cyclic_scaling, general, reduce);
criterion_main!(benches);
