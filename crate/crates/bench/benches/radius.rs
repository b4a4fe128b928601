use std::hint::black_box;

use bohr_core::{
    build_f0, run_tail_monte_carlo, solve, Family, PsiSpec, RadiusProblem, TailRunConfig, TruncatedSeries,
    DEFAULT_ORDER,
};
use criterion::{criterion_group, criterion_main, Criterion};

fn series_ops(c: &mut Criterion) {
    let f = build_f0(&PsiSpec::sine(), DEFAULT_ORDER);
    let w = bohr_core::sample_schwarz(1, 4).series(DEFAULT_ORDER);
    let phi = PsiSpec::cardioid()
        .series(DEFAULT_ORDER)
        .checked_sub(&TruncatedSeries::constant(1.0, DEFAULT_ORDER))
        .unwrap();
    c.bench_function("compose_64", |b| b.iter(|| black_box(&f).compose(black_box(&w)).unwrap()));
    c.bench_function("exp_64", |b| b.iter(|| black_box(&phi).exp().unwrap()));
    c.bench_function("build_f0_64", |b| b.iter(|| build_f0(black_box(&PsiSpec::sine()), DEFAULT_ORDER)));
}

fn solver(c: &mut Criterion) {
    let star = RadiusProblem::new(PsiSpec::sine(), Family::Starlike).with_n(4);
    let convex = RadiusProblem::new(PsiSpec::cardioid(), Family::Convex).with_n(2);
    c.bench_function("solve_sine_starlike", |b| b.iter(|| solve(black_box(&star)).unwrap()));
    c.bench_function("solve_cardioid_convex", |b| b.iter(|| solve(black_box(&convex)).unwrap()));
}

fn monte_carlo(c: &mut Criterion) {
    let cfg = TailRunConfig::default();
    let mut g = c.benchmark_group("monte_carlo");
    g.sample_size(10);
    g.bench_function("tail_100", |b| b.iter(|| run_tail_monte_carlo(7, 100, &cfg).unwrap()));
    g.finish();
}

criterion_group!(benches, series_ops, solver, monte_carlo);
criterion_main!(benches);
