use arcsub_bench::{
    dense_series, fourth_root_relation, octic, octic_point, octic_quotient, radical_curve, stick,
};
use arcsub_core::arith::rational::exp;
use arcsub_core::substitution::{discontinuity_witness, lift_arc};
use arcsub_core::{newton_puiseux, NewtonOptions, WitnessOptions};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

fn branches(c: &mut Criterion) {
    let mut g = c.benchmark_group("newton_puiseux");
    for d in [2, 3, 5] {
        let f = radical_curve(d);
        g.bench_with_input(BenchmarkId::new("radical", d), &f, |b, f| {
            b.iter(|| newton_puiseux(black_box(f), 16).unwrap())
        });
    }
    g.finish();
}

fn lifting(c: &mut Criterion) {
    let (rel, arc) = (fourth_root_relation(), stick());
    c.bench_function("lift_arc/octic_stick", |b| {
        b.iter(|| lift_arc(black_box(&rel), &arc, NewtonOptions::default()).unwrap())
    });
}

fn witness(c: &mut Criterion) {
    let (v, x0) = (octic(), octic_point());
    let mut g = c.benchmark_group("witness");
    g.sample_size(20);
    for k in [1, 2] {
        let f = octic_quotient(k);
        let opts = WitnessOptions {
            workers: 1,
            ..WitnessOptions::default()
        };
        g.bench_with_input(BenchmarkId::new("octic", k), &f, |b, f| {
            b.iter(|| discontinuity_witness(f, &v, &x0, opts).unwrap())
        });
    }
    g.finish();
}

fn series(c: &mut Criterion) {
    let mut g = c.benchmark_group("series");
    for n in [8, 32] {
        let a = dense_series(n);
        g.bench_with_input(BenchmarkId::new("mul", n), &a, |b, a| {
            b.iter(|| black_box(a).mul(a))
        });
        g.bench_with_input(BenchmarkId::new("invert", n), &a, |b, a| {
            b.iter(|| black_box(a).invert(exp(n, 2)).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, branches, lifting, witness, series);
criterion_main!(benches);
