use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use qpol_core::algebra::parse_expression;
use qpol_core::catalog::build_sym_series;
use qpol_core::coaction::CompositeSpec;
use qpol_core::numeric::{
    commutant_dimension, diagonal_family, joint_decomposition, relation_residual_suite, SpectralOptions,
};
use qpol_core::{Algebra, Presentation, Printing, SeriesId, Simplest, Su2Kind};

fn normal_form(c: &mut Criterion) {
    let mut g = c.benchmark_group("normal_form");
    for (alg, text) in [
        (Algebra::Sym2, "z11* z22* z21* z11 z22 z21"),
        (Algebra::Sym2, "(z11* + z21*)^3 (z11 + z22)^2"),
        (Algebra::Mat2, "z1^1* z2^2* z1^2 z2^1 z2^2"),
    ] {
        let p = parse_expression(text, alg).unwrap();
        let pres = Presentation::get(alg);
        g.bench_with_input(BenchmarkId::new(alg.name(), text), &p, |b, p| b.iter(|| pres.normal_form(black_box(p))));
    }
    g.finish();
}

fn operators(c: &mut Criterion) {
    let mut g = c.benchmark_group("operators");
    let rep = build_sym_series(SeriesId::Pi4, &[0.3], 0.5, &[16, 16], Printing::Corrected).unwrap();
    let z11 = rep.op(qpol_core::Generator::new(Algebra::Sym2, 1, 1));
    g.bench_function("compose pi4 z11 z11* at 16x16", |b| b.iter(|| black_box(z11).compose(&z11.adjoint())));
    let f1 = build_sym_series(SeriesId::Pi2, &[0.0], 0.5, &[24], Printing::Corrected).unwrap();
    let a = f1.op(qpol_core::Generator::new(Algebra::Sym2, 2, 2));
    g.bench_function("kron 24 x 24", |b| b.iter(|| black_box(a).kron(a)));
    g.bench_function("relation suite pi4 at 16", |b| b.iter(|| relation_residual_suite(black_box(&rep)).unwrap()));
    g.finish();
}

fn coaction(c: &mut Criterion) {
    let mut g = c.benchmark_group("coaction");
    g.sample_size(20);
    for trunc in [6, 8] {
        let spec = CompositeSpec::new(Algebra::Mat2, Simplest::F1, &[Su2Kind::Pi, Su2Kind::Pi], 0.5, trunc);
        g.bench_with_input(BenchmarkId::new("mat2 F1 pi pi", trunc), &spec, |b, s| b.iter(|| s.build().unwrap()));
    }
    g.finish();
}

fn spectral(c: &mut Criterion) {
    let mut g = c.benchmark_group("spectral");
    g.sample_size(10);
    for dim in [8, 12] {
        let rep = build_sym_series(SeriesId::Pi4, &[0.3], 0.5, &[dim, dim], Printing::Corrected).unwrap();
        let fam = diagonal_family(&rep);
        let ops: Vec<_> = fam.iter().map(|f| &f.1).collect();
        g.bench_with_input(BenchmarkId::new("joint decomposition pi4", dim), &ops, |b, ops| {
            b.iter(|| joint_decomposition(ops, &SpectralOptions::default()).unwrap())
        });
    }
    let pi3 = build_sym_series(SeriesId::Pi3, &[0.3], 0.5, &[16], Printing::Corrected).unwrap();
    g.bench_function("commutant pi3 at 16", |b| b.iter(|| commutant_dimension(black_box(&pi3), 1e-9).unwrap()));
    g.finish();
}

criterion_group!(benches, normal_form, operators, coaction, spectral);
criterion_main!(benches);
