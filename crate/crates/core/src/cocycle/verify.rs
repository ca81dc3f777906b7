//! Seeded random instances and a fuzz check of the cocycle relation.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{alternating_sigma_sum, tau_cocycle, SigmaFunction};
use crate::error::Result;
use crate::exactnum::{fmt_rat, Matrix, Rat};
use crate::exec::Exec;

/// A deterministic per-task RNG derived from a base seed and a stream index.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// `p/q` with `p` in `-num..=num` and `q` in `1..=den`.
pub fn random_rat<R: Rng>(rng: &mut R, num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(rng.gen_range(-num..=num)), BigInt::from(rng.gen_range(1..=den)))
}

pub fn random_vector<R: Rng>(rng: &mut R, n: usize, num: i64, den: i64) -> Vec<Rat> {
    (0..n).map(|_| random_rat(rng, num, den)).collect()
}

pub fn random_nonzero_vector<R: Rng>(rng: &mut R, n: usize, num: i64, den: i64) -> Vec<Rat> {
    loop {
        let v = random_vector(rng, n, num, den);
        if v.iter().any(|x| !x.is_zero()) {
            return v;
        }
    }
}

/// Invertible matrix with entries in `{-3..3}/{1..3}`.
pub fn random_matrix<R: Rng>(rng: &mut R, n: usize) -> Matrix {
    loop {
        let rows: Vec<Vec<Rat>> = (0..n).map(|_| random_vector(rng, n, 3, 3)).collect();
        let m = Matrix::from_rows(&rows);
        if !m.det().is_zero() {
            return m;
        }
    }
}

/// Invertible matrix whose first column is `first`.
pub fn random_matrix_with_first_column<R: Rng>(rng: &mut R, first: &[Rat]) -> Matrix {
    let n = first.len();
    loop {
        let mut m = random_matrix(rng, n);
        for (i, x) in first.iter().enumerate() {
            m.set(i, 0, x.clone());
        }
        if !m.det().is_zero() {
            return m;
        }
    }
}

/// Shapes of deliberately special matrix tuples.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Degeneracy {
    /// Two entries of the tuple are the same matrix.
    Repeated,
    /// All first columns are multiples of one vector.
    ParallelFirstColumns,
    /// All first columns lie in a common hyperplane.
    FlatFirstColumns,
    /// Entries differ by a sign or a positive diagonal factor.
    SignedCopies,
}

pub const DEGENERACIES: [Degeneracy; 4] = [
    Degeneracy::Repeated,
    Degeneracy::ParallelFirstColumns,
    Degeneracy::FlatFirstColumns,
    Degeneracy::SignedCopies,
];

/// `count` invertible n x n matrices, optionally of a special shape.
pub fn random_tuple<R: Rng>(
    rng: &mut R,
    n: usize,
    count: usize,
    shape: Option<Degeneracy>,
) -> Vec<Matrix> {
    let mut out: Vec<Matrix> = (0..count).map(|_| random_matrix(rng, n)).collect();
    match shape {
        None => {}
        Some(Degeneracy::Repeated) => {
            let i = rng.gen_range(0..count);
            let mut j = rng.gen_range(0..count);
            if j == i {
                j = (i + 1) % count;
            }
            out[j] = out[i].clone();
        }
        Some(Degeneracy::ParallelFirstColumns) => {
            let base = random_nonzero_vector(rng, n, 3, 2);
            for m in &mut out {
                let mut k = random_rat(rng, 3, 2);
                while k.is_zero() {
                    k = random_rat(rng, 3, 2);
                }
                let col: Vec<Rat> = base.iter().map(|x| x * &k).collect();
                *m = random_matrix_with_first_column(rng, &col);
            }
        }
        Some(Degeneracy::FlatFirstColumns) => {
            let span: Vec<Vec<Rat>> =
                (0..n.saturating_sub(1).max(1)).map(|_| random_nonzero_vector(rng, n, 3, 2)).collect();
            for m in &mut out {
                let col = loop {
                    let mut c = vec![Rat::zero(); n];
                    for s in &span {
                        let k = random_rat(rng, 2, 2);
                        for (ci, si) in c.iter_mut().zip(s) {
                            *ci += si * &k;
                        }
                    }
                    if c.iter().any(|x| !x.is_zero()) {
                        break c;
                    }
                };
                *m = random_matrix_with_first_column(rng, &col);
            }
        }
        Some(Degeneracy::SignedCopies) => {
            let base = out[0].clone();
            for m in out.iter_mut().skip(1) {
                *m = if rng.gen_bool(0.5) {
                    base.scale(&-Rat::from_integer(1.into()))
                } else {
                    let d: Vec<Rat> = (0..n)
                        .map(|_| Rat::from_integer(rng.gen_range(1..=3).into()))
                        .collect();
                    base.mul(&Matrix::diag(&d))
                };
            }
            out.shuffle(rng);
        }
    }
    out
}

/// Points that stress the boundaries: images of the first basis vector,
/// their negatives, and sums of pairs, followed by random points.
pub fn probe_points<R: Rng>(rng: &mut R, alphas: &[Matrix], random: usize) -> Vec<Vec<Rat>> {
    let n = alphas[0].rows();
    let firsts: Vec<Vec<Rat>> = alphas.iter().map(|a| a.column(0)).collect();
    let mut pts: Vec<Vec<Rat>> = Vec::new();
    for f in &firsts {
        pts.push(f.clone());
        pts.push(f.iter().map(|x| -x).collect());
    }
    for i in 0..firsts.len() {
        for j in i + 1..firsts.len() {
            pts.push(firsts[i].iter().zip(&firsts[j]).map(|(a, b)| a + b).collect());
            pts.push(firsts[i].iter().zip(&firsts[j]).map(|(a, b)| a - b).collect());
        }
    }
    for _ in 0..random {
        pts.push(random_nonzero_vector(rng, n, 5, 4));
    }
    pts.retain(|p| p.iter().any(|x| !x.is_zero()));
    pts
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub n: usize,
    pub trials: usize,
    pub points_per_trial: usize,
    pub seed: u64,
    /// Fraction of trials drawn from the special shapes.
    pub degenerate_rate: f64,
    pub exec: Exec,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { n: 2, trials: 100, points_per_trial: 20, seed: 0, degenerate_rate: 0.2, exec: Exec::Parallel }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CocycleFailure {
    pub trial: usize,
    pub matrices: Vec<Matrix>,
    pub point: Vec<String>,
    pub alternating_sum: i64,
    pub tau: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CocycleReport {
    pub n: usize,
    pub trials: usize,
    pub degenerate_trials: usize,
    pub checks: usize,
    pub failures: usize,
    pub first_failure: Option<CocycleFailure>,
}

struct TrialOutcome {
    degenerate: bool,
    checks: usize,
    failures: Vec<CocycleFailure>,
}

fn run_trial(opts: &VerifyOptions, trial: usize) -> Result<TrialOutcome> {
    let mut rng = stream_rng(opts.seed, trial as u64);
    let shape = if rng.gen_bool(opts.degenerate_rate.clamp(0.0, 1.0)) {
        Some(*DEGENERACIES.choose(&mut rng).expect("nonempty"))
    } else {
        None
    };
    let n = opts.n;
    let alphas = random_tuple(&mut rng, n, n + 1, shape);
    let tau = tau_cocycle(&alphas)? as i64;
    // Precompute each face once, alternating lifted and direct variables.
    let faces: Vec<SigmaFunction> = (0..=n)
        .map(|i| {
            let rest: Vec<Matrix> =
                alphas.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, a)| a.clone()).collect();
            if trial.is_multiple_of(2) {
                SigmaFunction::new(&rest)
            } else {
                let slots: Vec<usize> = (0..=n).filter(|&k| k != i).collect();
                SigmaFunction::with_slots(&rest, n + 1, &slots)
            }
        })
        .collect::<Result<_>>()?;
    let points = probe_points(&mut rng, &alphas, opts.points_per_trial);
    let mut failures = Vec::new();
    for w in &points {
        let sum: i64 = faces
            .iter()
            .enumerate()
            .map(|(i, f)| {
                let v = f.eval_unchecked(w) as i64;
                if i % 2 == 0 {
                    v
                } else {
                    -v
                }
            })
            .sum();
        if sum != tau {
            failures.push(CocycleFailure {
                trial,
                matrices: alphas.clone(),
                point: w.iter().map(fmt_rat).collect(),
                alternating_sum: sum,
                tau,
            });
        }
    }
    Ok(TrialOutcome { degenerate: shape.is_some(), checks: points.len(), failures })
}

/// Checks `sum_i (-1)^i sigma(omit alpha_i)(w) = tau(alpha)` on seeded random
/// tuples. Deterministic for a fixed seed regardless of `exec`.
pub fn verify_cocycle(opts: &VerifyOptions) -> Result<CocycleReport> {
    let outcomes = opts.exec.map_range(opts.trials, |t| run_trial(opts, t));
    let mut report = CocycleReport {
        n: opts.n,
        trials: opts.trials,
        degenerate_trials: 0,
        checks: 0,
        failures: 0,
        first_failure: None,
    };
    for o in outcomes {
        let o = o?;
        report.degenerate_trials += usize::from(o.degenerate);
        report.checks += o.checks;
        report.failures += o.failures.len();
        if report.first_failure.is_none() {
            report.first_failure = o.failures.into_iter().next();
        }
    }
    Ok(report)
}

/// Same relation at one point, recomputing every face from scratch.
pub fn check_cocycle_at(alphas: &[Matrix], w: &[Rat]) -> Result<bool> {
    Ok(alternating_sigma_sum(alphas, w, true)? == tau_cocycle(alphas)? as i64)
}
