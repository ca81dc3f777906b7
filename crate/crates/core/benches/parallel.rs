//! Sequential against data-parallel execution of the three hot loops.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use shintani::cocycle::verify::{verify_cocycle, VerifyOptions};
use shintani::cones::sigma_decompose_with;
use shintani::exactnum::{CoeffRing, Matrix};
use shintani::lvalues::{s_coeffs, RealQuadField};
use shintani::pairing::{pair_combo, SchwartzFn};
use shintani::Exec;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn decompose(c: &mut Criterion) {
    let alphas = [
        Matrix::identity(3),
        Matrix::from_ints(&[&[1, 2, 0], &[-1, 1, 3], &[2, 0, 1]]),
        Matrix::from_ints(&[&[0, 1, -2], &[3, 1, 1], &[1, -1, 2]]),
    ];
    let mut group = c.benchmark_group("sigma_decompose");
    for (name, exec) in MODES {
        group.bench_function(name, |b| b.iter(|| sigma_decompose_with(black_box(&alphas), exec).unwrap()));
    }
    group.finish();
}

fn verify(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_cocycle");
    group.sample_size(10);
    for n in [2, 3] {
        for (name, exec) in MODES {
            let opts = VerifyOptions { n, trials: 40, seed: 1, exec, ..VerifyOptions::default() };
            group.bench_with_input(BenchmarkId::new(name, n), &opts, |b, o| b.iter(|| verify_cocycle(o).unwrap()));
        }
    }
    group.finish();
}

fn pairing(c: &mut Criterion) {
    let q = CoeffRing::rationals();
    let alphas = [Matrix::identity(2), Matrix::from_ints(&[&[2, 1], &[1, 1]])];
    let combo = sigma_decompose_with(&alphas, Exec::Sequential).unwrap();
    let phi = SchwartzFn::from_fn(2, 1, 4, &q, |cl| q.from_int(if (cl[0] + cl[1]) % 2 == 1 { 1 } else { 0 })).unwrap();
    let field = RealQuadField::new(5).unwrap();
    // Sums to zero along every line through the origin, so no pole survives.
    let balanced = SchwartzFn::from_fn(2, 1, 3, &q, |cl| q.from_int(if (cl[0] + cl[1]) % 3 == 0 { 2 } else { -1 })).unwrap();

    let mut group = c.benchmark_group("pair_combo");
    group.sample_size(20);
    for (name, exec) in MODES {
        group.bench_function(name, |b| b.iter(|| pair_combo(black_box(&combo), &phi, 4, exec).unwrap()));
    }
    group.finish();

    let mut group = c.benchmark_group("s_coeffs");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(name, |b| b.iter(|| s_coeffs(&field, &balanced, 2, 6, exec).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, decompose, verify, pairing);
criterion_main!(benches);
