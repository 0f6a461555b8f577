use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use tgklo_core::poisson::{poisson_ideal_closure, rtt_constant, BracketPath, ModeAlgebra};
use tgklo_core::relcheck::{check_relation, Tag};
use tgklo_core::{DiffOp, MultiPoly, RatFunc, Roots, Shape, VarId};

fn diffop_mul(c: &mut Criterion) {
    let g = |k| MultiPoly::var(VarId::gamma(1, k));
    let den = &g(1) - &g(2);
    let f = RatFunc::frac(&g(1) + &MultiPoly::var(VarId::Hbar), &den).unwrap();
    let a = &DiffOp::beta(1, 1, 1).scale_left(&f) + &DiffOp::beta(1, 2, -1);
    let b = &DiffOp::beta(1, 2, 1).scale_left(&f) + &DiffOp::scalar(f.clone());
    c.bench_function("diffop_mul", |bench| bench.iter(|| black_box(&a) * black_box(&b)));
}

fn gklo_relation(c: &mut Criterion) {
    let shape = Shape::new(2, &[2], &[0], Roots::Symbolic).unwrap();
    c.bench_function("gklo_hb_n2", |bench| bench.iter(|| check_relation(black_box(&shape), Tag::HB)));
}

fn poisson(c: &mut Criterion) {
    let alg = ModeAlgebra::new(2, 6);
    c.bench_function("rtt_constant_n2_N6", |bench| {
        bench.iter(|| rtt_constant(black_box(&alg), BracketPath::Quotient))
    });
    c.bench_function("ideal_closure_n2_N6", |bench| {
        bench.iter(|| poisson_ideal_closure(2, 6, black_box(&[2]), true))
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = diffop_mul, gklo_relation, poisson
}
criterion_main!(benches);
