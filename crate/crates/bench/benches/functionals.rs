use std::hint::black_box;

use carath_core::functionals::{a_delsarte, a_det, a_herglotz, livingston};
use carath_core::herglotz::{coefficients, random_measure};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_complex::Complex64;

fn determinant_routes(c: &mut Criterion) {
    let w = Complex64::new(0.4, 0.3);
    let mu = random_measure(8, 7).unwrap();
    let mut group = c.benchmark_group("a_kn");
    for k in [2usize, 4, 8] {
        let n = k + 1;
        let p = coefficients(&mu, n + k);
        group.bench_with_input(BenchmarkId::new("det", k), &k, |b, &k| {
            b.iter(|| a_det(black_box(&p), k, n, w).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("herglotz", k), &k, |b, &k| {
            b.iter(|| a_herglotz(black_box(&mu), k, n, w).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("delsarte", k), &k, |b, &k| {
            b.iter(|| a_delsarte(black_box(&p), k, n, w).unwrap())
        });
    }
    group.finish();
}

fn coefficient_evaluation(c: &mut Criterion) {
    let mu = random_measure(16, 3).unwrap();
    c.bench_function("coefficients_16_atoms_deg_32", |b| b.iter(|| coefficients(black_box(&mu), 32)));
    let p = coefficients(&mu, 12);
    c.bench_function("livingston_k3_n12", |b| {
        b.iter(|| livingston(black_box(&p), 3, 12, Complex64::new(1.5, -0.5)).unwrap())
    });
}

criterion_group!(benches, determinant_routes, coefficient_evaluation);
criterion_main!(benches);
