use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use rtt_verify::catalog;
use rtt_verify::field::{gcd, parse_expr_any};
use rtt_verify::freealg::rtt_relations;
use rtt_verify::linalg::conj_tensor_square;
use rtt_verify::ybe::ybe_residual;
use rtt_verify::Orientation;

fn ybe(c: &mut Criterion) {
    let kup = catalog::matrix("kup_R").unwrap();
    let chart = catalog::matrix("kup_R_chart").unwrap();
    c.bench_function("ybe_residual/kup_R", |b| b.iter(|| ybe_residual(black_box(&kup)).unwrap()));
    c.bench_function("ybe_residual/kup_R_chart", |b| b.iter(|| ybe_residual(black_box(&chart)).unwrap()));
}

fn polynomial_gcd(c: &mut Criterion) {
    let common = parse_expr_any("kappa^2*(q+h*hp) - kappa*(q+1) + 1").unwrap();
    let f = &common * &parse_expr_any("(q-1)^3*eta + h*kappa - 2").unwrap();
    let g = &common * &parse_expr_any("q^2*zeta^2 - hp*kappa + 5").unwrap();
    c.bench_function("gcd/kappa_quadratic", |b| b.iter(|| gcd(black_box(f.num()), black_box(g.num()))));
}

fn relations(c: &mut Criterion) {
    let kup = catalog::matrix("kup_R").unwrap();
    c.bench_function("rtt_relations/kup_R", |b| b.iter(|| rtt_relations(black_box(&kup)).unwrap()));
}

fn conjugation(c: &mut Criterion) {
    let r = catalog::matrix("kup_R_chart").unwrap();
    let g = catalog::matrix("kup_G").unwrap();
    c.bench_function("conj_tensor_square/kup_G", |b| {
        b.iter(|| conj_tensor_square(black_box(&r), black_box(&g), Orientation::Grg).unwrap())
    });
}

criterion_group!(benches, ybe, polynomial_gcd, relations, conjugation);
criterion_main!(benches);
