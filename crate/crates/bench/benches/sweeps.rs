use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use homotope_bench::table_member;
use homotope_core::families::{ktwo_equivalence, rivillis_equivalence};
use homotope_core::jordan::{check_pair_axioms, AxiomPolicy};
use homotope_core::regularity::fibration_report;
use homotope_core::svar::{svar_membership, svar_membership_quadratic};
use homotope_core::{Field, JordanPair, Rational};

fn rationals(c: &mut Criterion) {
    let a = Rational::new(355, 113);
    let b = Rational::new(-22, 7);
    c.bench_function("rational/mul-add", |bn| bn.iter(|| black_box(&(&a * &b) + &a)));
    let big = Rational::new(i64::MAX, 3);
    c.bench_function("rational/overflow-to-big", |bn| bn.iter(|| black_box(&(&big * &big) * &big)));
}

fn axioms(c: &mut Criterion) {
    let mut g = c.benchmark_group("axioms");
    for spec in ["sym:R:3", "rect:C:2x3", "hermH:2", "spin:2,1"] {
        let p = JordanPair::parse(spec).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(spec), &p, |bn, p| bn.iter(|| check_pair_axioms(p, &AxiomPolicy::default())));
    }
    g.finish();
}

fn membership(c: &mut Criterion) {
    let mut g = c.benchmark_group("membership");
    for (label, field, n) in [("1.b", Field::Real, 3), ("1.b", Field::Complex, 3), ("2.a", Field::Real, 4), ("4.2.a", Field::Quaternion, 2)] {
        let (p, a) = table_member(label, field, n, n, 11);
        let id = format!("{label}/{}/{n}", field.symbol());
        g.bench_with_input(BenchmarkId::new("trilinear", &id), &(&p, &a), |bn, (p, a)| bn.iter(|| svar_membership(p, a).unwrap()));
        g.bench_with_input(BenchmarkId::new("quadratic", &id), &(&p, &a), |bn, (p, a)| bn.iter(|| svar_membership_quadratic(p, a).unwrap()));
    }
    g.finish();
}

fn fibration(c: &mut Criterion) {
    let (p, a) = table_member("1.b", Field::Real, 3, 3, 5);
    c.bench_function("fibration/1.b/R/3", |bn| bn.iter(|| fibration_report(&p, &a).unwrap()));
}

fn equivalences(c: &mut Criterion) {
    let mut g = c.benchmark_group("equivalence");
    g.sample_size(10);
    g.bench_function("ktwo", |bn| bn.iter(|| ktwo_equivalence().unwrap()));
    let p = JordanPair::parse("spin:2,1").unwrap();
    g.bench_function("rivillis/spin:2,1", |bn| bn.iter(|| rivillis_equivalence(&p, 1, 50, 7).unwrap()));
    g.finish();
}

criterion_group!(arith, rationals);
criterion_group!(sweeps, axioms, membership, fibration, equivalences);
criterion_main!(arith, sweeps);
