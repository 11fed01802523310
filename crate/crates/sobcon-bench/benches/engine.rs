//! Benchmarks for the hot paths: the profile recurrence, spline construction
//! with its built-in verification, the variational oracle, Sturm-certified
//! extremum analysis, and certified Λ² refinement.

use criterion::{criterion_group, criterion_main, Criterion};
use sobcon_core::embedding::{critical_points_k3, lambda_constant, profile_from_recurrence};
use sobcon_core::oracle::oracle_a_squared;
use sobcon_core::ratpoly::{rat, Rat};
use sobcon_core::spline::build_extremal_spline;
use std::hint::black_box;

fn bench_profile_recurrence(c: &mut Criterion) {
    c.bench_function("profile_from_recurrence n=12 k=5", |b| {
        b.iter(|| profile_from_recurrence(black_box(12), black_box(5)).unwrap())
    });
}

fn bench_spline(c: &mut Criterion) {
    let a = rat(1, 3);
    c.bench_function("build_extremal_spline n=8 k=5 a=1/3", |b| {
        b.iter(|| build_extremal_spline(black_box(8), black_box(5), &a).unwrap())
    });
}

fn bench_oracle(c: &mut Criterion) {
    let a = rat(1, 3);
    let mut group = c.benchmark_group("oracle");
    group.sample_size(20);
    group.bench_function("oracle_a_squared n=6 k=3 a=1/3", |b| {
        b.iter(|| oracle_a_squared(black_box(6), black_box(3), &a).unwrap())
    });
    group.finish();
}

fn bench_k3_analysis(c: &mut Criterion) {
    let mut group = c.benchmark_group("extremum");
    group.sample_size(20);
    group.bench_function("critical_points_k3 n=20", |b| {
        b.iter(|| critical_points_k3(black_box(20)).unwrap())
    });
    group.finish();
}

fn bench_lambda(c: &mut Criterion) {
    let precision = Rat::new(1.into(), num_bigint::BigInt::from(10u32).pow(20));
    let mut group = c.benchmark_group("lambda");
    group.sample_size(20);
    group.bench_function("lambda_constant n=8 k=3 width 1e-20", |b| {
        b.iter(|| lambda_constant(black_box(8), black_box(3), &precision).unwrap())
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_profile_recurrence,
    bench_spline,
    bench_oracle,
    bench_k3_analysis,
    bench_lambda
);
criterion_main!(benches);
