use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use pbq_core::aggregate::{aggregate_pipeline, PositiveFallback};
use pbq_core::split::{quadratize_split, SplitArity};
use pbq_core::termwise::{quadratize_termwise, rosenberg_reduce, PositiveMethod};
use pbq_core::verify::{brute_force_min, is_quadratization};
use pbq_core::{flowmin, rat, FreshVars, Pbf, VarSet};

/// The cubic vertex-cover family over a cycle: sum of x_0 x_i x_{i+1}.
fn cycle_star(n: usize) -> Pbf {
    let center = n as u32 + 1;
    let terms = (1..=n as u32).map(|i| {
        let j = if i == n as u32 { 1 } else { i + 1 };
        (VarSet::from_indices([i, j, center]), rat(1))
    });
    Pbf::from_terms(n + 1, terms.collect::<Vec<_>>()).unwrap()
}

/// A chain of negative cubics: -x_i x_{i+1} x_{i+2}.
fn negative_chain(n: usize) -> Pbf {
    let terms = (1..=n as u32 - 2).map(|i| (VarSet::from_indices([i, i + 1, i + 2]), rat(-1)));
    Pbf::from_terms(n, terms.collect::<Vec<_>>()).unwrap()
}

fn bench_methods(c: &mut Criterion) {
    let mut group = c.benchmark_group("quadratize");
    for n in [6usize, 10, 14] {
        let f = cycle_star(n);
        group.bench_with_input(BenchmarkId::new("chain", n), &f, |b, f| {
            b.iter(|| {
                let mut fresh = FreshVars::new(f.n_vars());
                black_box(quadratize_termwise(f, PositiveMethod::Chain, &mut fresh))
            })
        });
        group.bench_with_input(BenchmarkId::new("ishikawa", n), &f, |b, f| {
            b.iter(|| {
                let mut fresh = FreshVars::new(f.n_vars());
                black_box(quadratize_termwise(f, PositiveMethod::Ishikawa, &mut fresh))
            })
        });
        group.bench_with_input(BenchmarkId::new("rosenberg", n), &f, |b, f| {
            b.iter(|| {
                let mut fresh = FreshVars::new(f.n_vars());
                black_box(rosenberg_reduce(f, &mut fresh))
            })
        });
        group.bench_with_input(BenchmarkId::new("aggregate", n), &f, |b, f| {
            b.iter(|| {
                let mut fresh = FreshVars::new(f.n_vars());
                black_box(aggregate_pipeline(
                    f,
                    PositiveFallback::Ishikawa,
                    &mut fresh,
                ))
            })
        });
        group.bench_with_input(BenchmarkId::new("2-split", n), &f, |b, f| {
            b.iter(|| {
                let mut fresh = FreshVars::new(f.n_vars());
                black_box(quadratize_split(f, SplitArity::Two, &mut fresh))
            })
        });
    }
    group.finish();
}

fn bench_minimizers(c: &mut Criterion) {
    let mut group = c.benchmark_group("minimize");
    for n in [8usize, 12, 16] {
        let f = negative_chain(n);
        let mut fresh = FreshVars::new(f.n_vars());
        let g = quadratize_termwise(&f, PositiveMethod::Chain, &mut fresh).into_g();
        group.bench_with_input(BenchmarkId::new("min-cut", n), &g, |b, g| {
            b.iter(|| black_box(flowmin::min_cut_minimize(g).unwrap()))
        });
        if g.n_vars() <= 20 {
            group.bench_with_input(BenchmarkId::new("enumeration", n), &g, |b, g| {
                b.iter(|| black_box(brute_force_min(g).unwrap()))
            });
        }
    }
    group.finish();
}

fn bench_oracle(c: &mut Criterion) {
    let f = cycle_star(6);
    let mut fresh = FreshVars::new(f.n_vars());
    let q = quadratize_termwise(&f, PositiveMethod::Ishikawa, &mut fresh);
    c.bench_function("is_quadratization/cycle-star-6", |b| {
        b.iter(|| black_box(is_quadratization(&f, q.g()).unwrap()))
    });
}

criterion_group!(benches, bench_methods, bench_minimizers, bench_oracle);
criterion_main!(benches);
