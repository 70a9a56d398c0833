use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use trimat_bench::{complete_intersection, random_matrix, random_module, random_pair};
use trimat_core::lab::{four_matrix_module, four_matrix_pair};
use trimat_core::{counterexample_check, cyclic_quotient, FieldSpec};

fn fields() -> [(&'static str, FieldSpec); 2] {
    [("F101", FieldSpec::prime(101).unwrap()), ("Q", FieldSpec::rational())]
}

fn rank(c: &mut Criterion) {
    let mut g = c.benchmark_group("rank");
    for (name, f) in fields() {
        for n in [16, 48] {
            let m = random_matrix(f, n, 1);
            g.bench_with_input(BenchmarkId::new(name, n), &m, |b, m| b.iter(|| black_box(m).rank()));
        }
    }
    g.finish();
}

fn algebra_dimension(c: &mut Criterion) {
    let mut g = c.benchmark_group("algebra_dimension");
    let e = four_matrix_module(FieldSpec::prime(101).unwrap());
    g.bench_function("four_matrices", |b| b.iter(|| black_box(&e).algebra_dimension()));
    for d in [6, 10] {
        let m = random_module(FieldSpec::prime(101).unwrap(), 3, d, 7);
        g.bench_with_input(BenchmarkId::new("random_3_vars", d), &m, |b, m| b.iter(|| m.algebra_dimension()));
        g.bench_with_input(BenchmarkId::new("by_monomials", d), &m, |b, m| {
            b.iter(|| m.algebra_dimension_by_monomials())
        });
    }
    g.finish();
}

fn quotient(c: &mut Criterion) {
    let mut g = c.benchmark_group("cyclic_quotient");
    for (name, f) in fields() {
        for (a, b_, cc) in [(2, 2, 2), (3, 3, 3)] {
            let ideal = complete_intersection(f, a, b_, cc);
            g.bench_with_input(BenchmarkId::new(name, format!("{a}{b_}{cc}")), &ideal, |b, i| {
                b.iter(|| cyclic_quotient(i, 20).unwrap())
            });
        }
    }
    g.finish();
}

fn inequality(c: &mut Criterion) {
    let mut g = c.benchmark_group("counterexample_check");
    let (_, pair) = four_matrix_pair(FieldSpec::rational()).unwrap();
    g.bench_function("four_matrix", |b| b.iter(|| counterexample_check(black_box(&pair)).unwrap()));
    for d in [6, 10] {
        let beta = random_pair(FieldSpec::prime(101).unwrap(), 4, d, 3);
        g.bench_with_input(BenchmarkId::new("random_4_vars", d), &beta, |b, beta| {
            b.iter(|| counterexample_check(beta).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, rank, algebra_dimension, quotient, inequality);
criterion_main!(benches);
