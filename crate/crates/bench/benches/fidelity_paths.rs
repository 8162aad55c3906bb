use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qfid_bench::{fixture_pair, CHEB_DEGREE, CHEB_PROBES, DIMS};
use qfid_core::linalg::{hermitian_eigen, pivoted_cholesky, EIGEN_TOL};
use qfid_core::measures::{
    alpha_z_divergence, alpha_z_divergence_three_factor, fidelity_cheb, fidelity_product, fidelity_uhlmann,
};
use qfid_core::SeededRng;

fn fidelity_routes(c: &mut Criterion) {
    let mut g = c.benchmark_group("fidelity");
    for dim in DIMS {
        let (rho, sigma) = fixture_pair(dim);
        g.bench_with_input(BenchmarkId::new("uhlmann", dim), &dim, |b, _| {
            b.iter(|| fidelity_uhlmann(black_box(&rho), black_box(&sigma)).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("product", dim), &dim, |b, _| {
            b.iter(|| fidelity_product(black_box(&rho), black_box(&sigma)).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("cheb-exact", dim), &dim, |b, _| {
            b.iter(|| {
                fidelity_cheb(
                    black_box(&rho),
                    black_box(&sigma),
                    CHEB_DEGREE,
                    0,
                    &mut SeededRng::new(1),
                )
                .unwrap()
            })
        });
        g.bench_with_input(BenchmarkId::new("cheb-stoch", dim), &dim, |b, _| {
            b.iter(|| {
                fidelity_cheb(
                    black_box(&rho),
                    black_box(&sigma),
                    CHEB_DEGREE,
                    CHEB_PROBES,
                    &mut SeededRng::new(1),
                )
                .unwrap()
            })
        });
    }
    g.finish();
}

fn alpha_z_forms(c: &mut Criterion) {
    let mut g = c.benchmark_group("alpha_z");
    for dim in DIMS {
        let (rho, sigma) = fixture_pair(dim);
        g.bench_with_input(BenchmarkId::new("merged", dim), &dim, |b, _| {
            b.iter(|| alpha_z_divergence(black_box(&rho), black_box(&sigma), 0.5, 0.5).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("three-factor", dim), &dim, |b, _| {
            b.iter(|| alpha_z_divergence_three_factor(black_box(&rho), black_box(&sigma), 0.5, 0.5).unwrap())
        });
    }
    g.finish();
}

fn kernels(c: &mut Criterion) {
    let mut g = c.benchmark_group("kernels");
    for dim in DIMS {
        let (rho, _) = fixture_pair(dim);
        g.bench_with_input(BenchmarkId::new("jacobi", dim), &dim, |b, _| {
            b.iter(|| hermitian_eigen(black_box(rho.matrix()), EIGEN_TOL).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("cholesky", dim), &dim, |b, _| {
            b.iter(|| pivoted_cholesky(black_box(rho.matrix()), 1e-13).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, fidelity_routes, alpha_z_forms, kernels);
criterion_main!(benches);
