use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use l2dz_core::double_eisenstein::verify_theorem3;
use l2dz_core::eisenstein_q::delta_series;
use l2dz_core::formal_dzspace::check_sum_formula;
use l2dz_core::modforms::appendix_identity_check;
use l2dz_core::numeric::double_zeta_level2;
use l2dz_core::period_poly::{qk_matrix, Level};
use l2dz_core::Kind;

fn period_matrices(c: &mut Criterion) {
    let mut g = c.benchmark_group("qk_matrix_rank");
    for k in [12u32, 24, 40] {
        g.bench_with_input(BenchmarkId::from_parameter(k), &k, |b, &k| {
            b.iter(|| qk_matrix(black_box(k), Level::Two).unwrap().rank())
        });
    }
    g.finish();
}

fn sum_formula(c: &mut Criterion) {
    c.bench_function("check_sum_formula_20", |b| b.iter(|| check_sum_formula(black_box(20)).unwrap().holds));
}

fn series(c: &mut Criterion) {
    c.bench_function("delta_series_200", |b| b.iter(|| delta_series(black_box(200)).unwrap()));
    let mut g = c.benchmark_group("slow");
    g.sample_size(10);
    g.bench_function("theorem3_4_3_order20", |b| b.iter(|| verify_theorem3(4, 3, 20, 30).unwrap().pass));
    g.bench_function("appendix_identity_1_order50", |b| b.iter(|| appendix_identity_check(1, 50).unwrap().pass));
    g.finish();
}

fn numerics(c: &mut Criterion) {
    let mut g = c.benchmark_group("double_zeta_level2");
    for digits in [20u32, 40] {
        g.bench_with_input(BenchmarkId::new("oo_3_2", digits), &digits, |b, &d| {
            b.iter(|| double_zeta_level2(Kind::OO, 3, 2, black_box(d)).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, period_matrices, sum_formula, series, numerics);
criterion_main!(benches);
