//! Oracles written independently of the library, plus seeded generators.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use shintani::exactnum::{int, rat, Matrix, Rat};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ints(xs: &[i64]) -> Vec<Rat> {
    xs.iter().map(|&x| int(x)).collect()
}

pub fn small_rat<R: Rng>(rng: &mut R, num: i64, den: i64) -> Rat {
    rat(rng.gen_range(-num..=num), rng.gen_range(1..=den))
}

pub fn nonzero_rat<R: Rng>(rng: &mut R, num: i64, den: i64) -> Rat {
    loop {
        let q = small_rat(rng, num, den);
        if !q.is_zero() {
            return q;
        }
    }
}

pub fn positive_rat<R: Rng>(rng: &mut R, num: i64, den: i64) -> Rat {
    rat(rng.gen_range(1..=num), rng.gen_range(1..=den))
}

pub fn vector<R: Rng>(rng: &mut R, n: usize, num: i64, den: i64) -> Vec<Rat> {
    (0..n).map(|_| small_rat(rng, num, den)).collect()
}

pub fn nonzero_vector<R: Rng>(rng: &mut R, n: usize, num: i64, den: i64) -> Vec<Rat> {
    loop {
        let v = vector(rng, n, num, den);
        if v.iter().any(|x| !x.is_zero()) {
            return v;
        }
    }
}

pub fn invertible<R: Rng>(rng: &mut R, n: usize) -> Matrix {
    loop {
        let rows: Vec<Vec<Rat>> = (0..n).map(|_| vector(rng, n, 3, 3)).collect();
        let m = Matrix::from_rows(&rows);
        if !m.det().is_zero() {
            return m;
        }
    }
}

pub fn sign(q: &Rat) -> i8 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

/// Determinant by Gaussian elimination over Q, independent of the library.
pub fn det(rows: &[Vec<Rat>]) -> Rat {
    let n = rows.len();
    let mut a: Vec<Vec<Rat>> = rows.to_vec();
    let mut d = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= a[c][c].clone();
        for r in c + 1..n {
            let f = &a[r][c] / &a[c][c];
            for k in c..n {
                let t = &a[c][k] * &f;
                a[r][k] -= t;
            }
        }
    }
    d
}

/// `det` of the matrix whose columns are `cols`.
pub fn det_cols(cols: &[Vec<Rat>]) -> Rat {
    let n = cols.len();
    let rows: Vec<Vec<Rat>> = (0..n).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
    det(&rows)
}

/// Whether every subset of at most n of the vectors is independent.
pub fn in_general_position(vs: &[Vec<Rat>]) -> bool {
    let n = vs[0].len();
    let m = vs.len();
    // Checking the n-subsets (or the whole set when smaller) suffices.
    let k = n.min(m);
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let sub: Vec<Vec<Rat>> = idx.iter().map(|&i| vs[i].clone()).collect();
        if rank(&sub) < k {
            return false;
        }
        let mut i = k;
        loop {
            if i == 0 {
                return true;
            }
            i -= 1;
            if idx[i] < m - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

pub fn rank(vs: &[Vec<Rat>]) -> usize {
    let mut a: Vec<Vec<Rat>> = vs.to_vec();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = &a[i][c] / &a[r][c];
                for k in c..cols {
                    let t = &a[r][k] * &f;
                    a[i][k] -= t;
                }
            }
        }
        r += 1;
    }
    r
}

/// `d` from its definition: find the kernel vector and test whether the
/// origin is in the interior of the positive hull.
pub fn d_oracle(vs: &[Vec<Rat>]) -> i8 {
    let n = vs.len() - 1;
    // lambda_i = (-1)^i det(omit i) spans the kernel.
    let lambdas: Vec<Rat> = (0..=n)
        .map(|i| {
            let cols: Vec<Vec<Rat>> =
                vs.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, v)| v.clone()).collect();
            let d = det_cols(&cols);
            if i % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .collect();
    let s = sign(&lambdas[0]);
    if lambdas.iter().all(|l| sign(l) == s) {
        s
    } else {
        0
    }
}

/// Bernoulli numbers `B_0..=B_m` with `B_1 = -1/2`, by the Akiyama-Tanigawa
/// algorithm.
pub fn bernoulli_oracle(m: usize) -> Vec<Rat> {
    let mut out = Vec::with_capacity(m + 1);
    let mut a: Vec<Rat> = Vec::new();
    for k in 0..=m {
        a.push(rat(1, k as i64 + 1));
        for j in (1..=k).rev() {
            let t = (&a[j - 1] - &a[j]) * int(j as i64);
            a[j - 1] = t;
        }
        out.push(a[0].clone());
    }
    if m >= 1 {
        out[1] = rat(-1, 2);
    }
    out
}

fn binom(n: usize, k: usize) -> BigInt {
    let mut b = BigInt::one();
    for i in 0..k {
        b = b * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    b
}

/// `B_r(x) = sum_k C(r, k) B_k x^(r-k)`.
pub fn bernoulli_poly_oracle(r: usize, x: &Rat) -> Rat {
    let bs = bernoulli_oracle(r);
    (0..=r)
        .map(|k| Rat::from_integer(binom(r, k)) * &bs[k] * num_traits::pow(x.clone(), r - k))
        .sum()
}

/// `L(chi, 1 - r)` for a rational-valued table `chi(0..f)`.
pub fn dirichlet_oracle(chi: &[i64], r: usize) -> Rat {
    let f = chi.len() as i64;
    let s: Rat = (1..=f)
        .map(|a| int(chi[(a % f) as usize]) * bernoulli_poly_oracle(r, &rat(a, f)))
        .sum();
    -s * num_traits::pow(int(f), r - 1) / int(r as i64)
}

/// Kronecker symbol `(disc / n)` for a fundamental discriminant.
pub fn kronecker(disc: i64, n: i64) -> i64 {
    if n == 0 {
        return i64::from(disc.abs() == 1);
    }
    let mut n = n.abs();
    let mut out = 1;
    while n % 2 == 0 {
        n /= 2;
        if disc % 2 == 0 {
            return 0;
        }
        out *= match disc.rem_euclid(8) {
            1 | 7 => 1,
            _ => -1,
        };
    }
    // Jacobi symbol (disc / n) for odd n.
    let mut a = disc.rem_euclid(n);
    let mut m = n;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(m % 8, 3 | 5) {
                out = -out;
            }
        }
        std::mem::swap(&mut a, &mut m);
        if a % 4 == 3 && m % 4 == 3 {
            out = -out;
        }
        a %= m;
    }
    if m == 1 {
        out
    } else {
        0
    }
}

pub fn discriminant(d: i64) -> i64 {
    if d % 4 == 1 {
        d
    } else {
        4 * d
    }
}

/// `zeta_K(-1) = (1/60) sum_{b^2 < disc, b = disc mod 2} sigma_1((disc - b^2)/4)`.
pub fn siegel_oracle(d: i64) -> Rat {
    let disc = discriminant(d);
    let mut s = 0i64;
    for b in -disc..=disc {
        if b * b < disc && (disc - b * b) % 4 == 0 {
            let m = (disc - b * b) / 4;
            s += (1..=m).filter(|k| m % k == 0).sum::<i64>();
        }
    }
    rat(s, 60)
}

/// `sigma(1, alpha)(w)` in the plane from concrete tiny infinitesimals
/// `e1 = 10^-40`, `e2 = 10^-120`: fine for entries of small height.
pub fn planar_sigma_numeric(alpha: &Matrix, w: &[Rat]) -> i8 {
    let e1 = Rat::new(BigInt::one(), BigInt::from(10).pow(40));
    let e2 = Rat::new(BigInt::one(), BigInt::from(10).pow(120));
    let (a, b, c, d) = (alpha.get(0, 0), alpha.get(0, 1), alpha.get(1, 0), alpha.get(1, 1));
    let m01 = a + b * &e2;
    let m11 = c + d * &e2;
    let det = &m11 - &e1 * &m01;
    let xp = (&m11 * &w[0] - &m01 * &w[1]) / &det;
    let yp = (&w[1] - &e1 * &w[0]) / &det;
    if xp.is_positive() && yp.is_positive() {
        sign(&det)
    } else {
        0
    }
}

/// The planar shapes: upper triangular, or upper triangular times the swap
/// times a unipotent.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Triangular,
    Swapped,
}

pub struct PlanarCase {
    pub shape: Shape,
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
    pub d: Rat,
}

impl PlanarCase {
    pub fn matrix(&self) -> Matrix {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        match self.shape {
            Shape::Triangular => Matrix::from_rows(&[vec![a.clone(), b.clone()], vec![Rat::zero(), c.clone()]]),
            Shape::Swapped => {
                Matrix::from_rows(&[vec![b.clone(), b * d + a], vec![c.clone(), c * d]])
            }
        }
    }

    /// The tabulated value. With `literal` the swapped case with `a < 0 < c`
    /// uses the printed condition `cx - by <= 0`; otherwise `cx - by >= 0`.
    pub fn table(&self, w: &[Rat], literal: bool) -> i8 {
        let (x, y) = (&w[0], &w[1]);
        let (a, b, c) = (sign(&self.a), &self.b, &self.c);
        let cs = sign(c);
        match self.shape {
            Shape::Triangular => match (a, cs) {
                (1, 1) => 0,
                (1, -1) => -i8::from(x.is_positive() && y.is_zero()),
                (-1, 1) => i8::from(y.is_positive()),
                _ => i8::from(y.is_positive() || (y.is_zero() && x.is_negative())),
            },
            Shape::Swapped => {
                let l = sign(&(c * x - b * y));
                match (a, cs) {
                    (1, 1) => i8::from(y.is_positive() && l > 0),
                    (1, -1) => -i8::from(!y.is_positive() && l < 0),
                    (-1, 1) => i8::from(y.is_positive() && if literal { l <= 0 } else { l >= 0 }),
                    _ => -i8::from(!y.is_positive() && l <= 0),
                }
            }
        }
    }
}

/// Points that hit the lines the table distinguishes: the axes and
/// `cx = by`, besides random points.
pub fn planar_samples<R: Rng>(rng: &mut R, case: &PlanarCase, count: usize) -> Vec<Vec<Rat>> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let w = match out.len() % 5 {
            0 => vec![nonzero_rat(rng, 5, 3), Rat::zero()],
            1 => vec![Rat::zero(), nonzero_rat(rng, 5, 3)],
            2 if !case.c.is_zero() => {
                // c x = b y
                let y = nonzero_rat(rng, 5, 3);
                vec![&case.b * &y / &case.c, y]
            }
            _ => nonzero_vector(rng, 2, 5, 3),
        };
        if w.iter().any(|x| !x.is_zero()) {
            out.push(w);
        }
    }
    out
}

/// Solomon's `s(alpha, beta)(w)`.
pub fn solomon_oracle(alpha: &Matrix, beta: &Matrix, w: &[Rat]) -> Rat {
    let u = alpha.column(0);
    let v = beta.column(0);
    let dt = det_cols(&[u.clone(), v.clone()]);
    if dt.is_zero() {
        return Rat::zero();
    }
    // w = x u + y v by Cramer's rule
    let x = det_cols(&[w.to_vec(), v]) / &dt;
    let y = det_cols(&[u, w.to_vec()]) / &dt;
    let s = int(i64::from(sign(&dt)));
    match (sign(&x), sign(&y)) {
        (1, 1) => s,
        (1, 0) | (0, 1) => s / int(2),
        _ => Rat::zero(),
    }
}

/// `tau(w) = 1/2` on the open positive x-axis.
pub fn half_axis(w: &[Rat]) -> Rat {
    if w[1].is_zero() && w[0].is_positive() {
        rat(1, 2)
    } else {
        Rat::zero()
    }
}

/// `(alpha * f)(w) = sign(det alpha) f(alpha^-1 w)`.
pub fn act(alpha: &Matrix, f: impl Fn(&[Rat]) -> Rat, w: &[Rat]) -> Rat {
    let (a, b, c, d) = (alpha.get(0, 0), alpha.get(0, 1), alpha.get(1, 0), alpha.get(1, 1));
    let dt = a * d - b * c;
    let pre = vec![(d * &w[0] - b * &w[1]) / &dt, (a * &w[1] - c * &w[0]) / &dt];
    int(i64::from(sign(&dt))) * f(&pre)
}

/// Points of `(1/d) Z^n` in the half-open parallelotope of `gens`, by a scan of
/// the bounding box and an independent coordinate solve (n <= 2).
pub fn parallelotope_oracle(gens: &[Vec<Rat>], d: i64) -> Vec<Vec<Rat>> {
    let n = gens[0].len();
    let dq = int(d);
    let mut lo = vec![Rat::zero(); n];
    let mut hi = vec![Rat::zero(); n];
    for g in gens {
        for i in 0..n {
            if g[i].is_negative() {
                lo[i] += g[i].clone();
            } else {
                hi[i] += g[i].clone();
            }
        }
    }
    let range = |i: usize| -> (BigInt, BigInt) { ((&lo[i] * &dq).floor().to_integer(), (&hi[i] * &dq).ceil().to_integer()) };
    let mut out = Vec::new();
    let mut grid: Vec<Vec<Rat>> = vec![Vec::new()];
    for i in 0..n {
        let (a, b) = range(i);
        let mut next = Vec::new();
        for p in &grid {
            let mut k = a.clone();
            while k <= b {
                let mut q = p.clone();
                q.push(Rat::new(k.clone(), BigInt::from(d)));
                next.push(q);
                k += 1;
            }
        }
        grid = next;
    }
    for p in grid {
        if let Some(x) = coordinates_in(gens, &p) {
            if x.iter().all(|t| t.is_positive() && *t <= Rat::one()) {
                out.push(p);
            }
        }
    }
    out.sort();
    out
}

fn coordinates_in(gens: &[Vec<Rat>], p: &[Rat]) -> Option<Vec<Rat>> {
    match (gens.len(), p.len()) {
        (1, _) => {
            let g = &gens[0];
            let i = g.iter().position(|x| !x.is_zero())?;
            let t = &p[i] / &g[i];
            g.iter().zip(p).all(|(gj, pj)| gj * &t == *pj).then_some(vec![t])
        }
        (2, 2) => {
            let dt = det_cols(gens);
            Some(vec![det_cols(&[p.to_vec(), gens[1].clone()]) / &dt, det_cols(&[gens[0].clone(), p.to_vec()]) / &dt])
        }
        _ => unimplemented!("oracle covers n <= 2"),
    }
}

/// Least `k > 0` with `k v` in `f Z^n`.
pub fn lattice_scale(v: &[Rat], f: i64) -> BigInt {
    v.iter().fold(BigInt::one(), |acc, x| acc.lcm((x / int(f)).denom()))
}

/// Random directions going once around the circle, each gap below a half
/// turn: the open sectors and rays between them cover the punctured plane.
pub fn circle_fan<R: Rng>(rng: &mut R) -> Vec<Vec<Rat>> {
    loop {
        let k = rng.gen_range(3..=6);
        let mut vs: Vec<Vec<Rat>> = (0..k).map(|_| nonzero_vector(rng, 2, 4, 2)).collect();
        vs.sort_by(|a, b| angle(a).partial_cmp(&angle(b)).expect("finite"));
        vs.dedup_by(|a, b| det_cols(&[a.clone(), b.clone()]).is_zero() && sign(&a[0]) == sign(&b[0]) && sign(&a[1]) == sign(&b[1]));
        let ok = vs.len() >= 3
            && (0..vs.len()).all(|i| det_cols(&[vs[i].clone(), vs[(i + 1) % vs.len()].clone()]).is_positive());
        if ok {
            return vs;
        }
    }
}

fn angle(v: &[Rat]) -> f64 {
    let x = shintani::exactnum::coeff::approx_f64(&v[0]);
    let y = shintani::exactnum::coeff::approx_f64(&v[1]);
    y.atan2(x)
}
