use std::hint::black_box;

use aparam_bench::{bessel_pair, branching_pair, gl_chain_pair};
use aparam_core::enumerate::{enumerate_params, EnumerationBounds};
use aparam_core::glbranch::decide_gl_branching;
use aparam_core::lfun::{bessel_ratio_order, gl_ratio_order};
use aparam_core::relevance::{brute_force_relevant, check_relevant};
use aparam_core::{Parity, WeilSymbol};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn relevance(c: &mut Criterion) {
    let mut g = c.benchmark_group("relevance");
    for k in [4, 16, 64] {
        let (m, n) = gl_chain_pair(k);
        g.bench_with_input(BenchmarkId::new("descent", k), &(m, n), |b, (m, n)| {
            b.iter(|| check_relevant(black_box(m), black_box(n)))
        });
    }
    let (m, n) = gl_chain_pair(4);
    g.bench_function("brute_force/4", |b| b.iter(|| brute_force_relevant(black_box(&m), black_box(&n), 8, 10_000_000)));
    g.finish();
}

fn lfun(c: &mut Criterion) {
    let (m, n) = bessel_pair();
    c.bench_function("lfun/bessel_ratio", |b| b.iter(|| bessel_ratio_order(black_box(&m), black_box(&n))));
    let (m, n) = gl_chain_pair(16);
    c.bench_function("lfun/gl_ratio/16", |b| b.iter(|| gl_ratio_order(black_box(&m), black_box(&n))));
}

fn branching(c: &mut Criterion) {
    let (m, n) = branching_pair();
    c.bench_function("glbranch/decide", |b| b.iter(|| decide_gl_branching(black_box(&m), black_box(&n))));
}

fn enumeration(c: &mut Criterion) {
    let symbols = [WeilSymbol::trivial()];
    let bounds = EnumerationBounds::new(Parity::Symplectic, 10);
    c.bench_function("enumerate/symplectic/10", |b| b.iter(|| enumerate_params(black_box(&symbols), &bounds)));
}

criterion_group!(benches, relevance, lfun, branching, enumeration);
criterion_main!(benches);
