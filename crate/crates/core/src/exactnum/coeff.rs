use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::Matrix;
use super::rat::{fmt_rat, int, Rat};
use super::ring::Ring;
use crate::error::{Error, Result};

/// Integer coefficients of the m-th cyclotomic polynomial, constant term first.
pub fn cyclotomic(m: u32) -> Vec<i128> {
    assert!(m >= 1, "cyclotomic order must be positive");
    // x^m - 1
    let mut p = vec![0i128; m as usize + 1];
    p[0] = -1;
    p[m as usize] = 1;
    for d in 1..m {
        if m.is_multiple_of(d) {
            p = div_monic_exact(&p, &cyclotomic(d));
        }
    }
    p
}

fn div_monic_exact(num: &[i128], den: &[i128]) -> Vec<i128> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let nq = rem.len() - dd;
    let mut q = vec![0i128; nq];
    for k in (0..nq).rev() {
        let c = rem[k + dd];
        q[k] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[k + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0), "inexact cyclotomic division");
    q
}

fn is_square_free(d: i64) -> bool {
    if d < 2 {
        return false;
    }
    let mut k = 2i64;
    while k * k <= d {
        if d % (k * k) == 0 {
            return false;
        }
        k += 1;
    }
    true
}

#[derive(Debug, PartialEq, Eq)]
struct RingData {
    m: u32,
    d: Option<i64>,
    /// Phi_m as rationals, constant term first (monic).
    phi: Vec<Rat>,
}

/// The ring Q[g1, g2] / (Phi_m(g1), g2^2 - D): g1 is a primitive m-th root of
/// unity and g2 a square root of D. Cheap to clone.
#[derive(Clone, PartialEq, Eq)]
pub struct CoeffRing(Arc<RingData>);

impl fmt::Debug for CoeffRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0.d {
            Some(d) => write!(f, "Q(zeta_{}, sqrt({d}))", self.0.m),
            None => write!(f, "Q(zeta_{})", self.0.m),
        }
    }
}

impl CoeffRing {
    pub fn rationals() -> Self {
        Self::new(1, None).expect("Q is always valid")
    }

    pub fn new(m: u32, d: Option<i64>) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidCharacter("cyclotomic order must be >= 1".into()));
        }
        if let Some(d) = d {
            if !is_square_free(d) {
                return Err(Error::NotSquareFree(d));
            }
        }
        let phi = cyclotomic(m).into_iter().map(|c| Rat::from_integer(BigInt::from(c))).collect();
        Ok(CoeffRing(Arc::new(RingData { m, d, phi })))
    }

    pub fn order(&self) -> u32 {
        self.0.m
    }

    pub fn radicand(&self) -> Option<i64> {
        self.0.d
    }

    /// Degree of Phi_m, i.e. the number of powers of g1 in the basis.
    pub fn deg1(&self) -> usize {
        self.0.phi.len() - 1
    }

    pub fn deg2(&self) -> usize {
        if self.0.d.is_some() {
            2
        } else {
            1
        }
    }

    /// Dimension over Q.
    pub fn dim(&self) -> usize {
        self.deg1() * self.deg2()
    }

    pub fn zero(&self) -> CoeffElem {
        CoeffElem { ring: self.clone(), c: vec![Rat::zero(); self.dim()] }
    }

    pub fn one(&self) -> CoeffElem {
        self.from_rat(Rat::one())
    }

    pub fn from_rat(&self, q: Rat) -> CoeffElem {
        let mut e = self.zero();
        e.c[0] = q;
        e
    }

    pub fn from_int(&self, n: i64) -> CoeffElem {
        self.from_rat(int(n))
    }

    /// `zeta_m^k` for any integer k.
    pub fn zeta_pow(&self, k: i64) -> CoeffElem {
        let m = self.0.m as i64;
        let k = k.rem_euclid(m) as usize;
        let mut e = self.one();
        let g = self.g1();
        for _ in 0..k {
            e = e.times(&g);
        }
        e
    }

    fn g1(&self) -> CoeffElem {
        let mut raw = vec![Rat::zero(); 2];
        raw[1] = Rat::one();
        self.reduce_g1_poly(&[raw[0].clone(), raw[1].clone()], 0)
    }

    /// The square root of D; errors when the ring has none.
    pub fn sqrt_d(&self) -> Result<CoeffElem> {
        if self.0.d.is_none() {
            return Err(Error::RingMismatch(format!("{self:?} has no square root generator")));
        }
        let mut e = self.zero();
        e.c[self.deg1()] = Rat::one();
        Ok(e)
    }

    /// Builds an element from a dense g1-polynomial (any degree) in the g2^j slot.
    fn reduce_g1_poly(&self, poly: &[Rat], j: usize) -> CoeffElem {
        let r = reduce_mod_phi(poly, &self.0.phi);
        let mut e = self.zero();
        let n1 = self.deg1();
        for (i, v) in r.into_iter().enumerate() {
            e.c[i + j * n1] = v;
        }
        e
    }

    /// Whether elements of `self` embed into `other` via g1 -> g1^(m'/m).
    pub fn embeds_into(&self, other: &CoeffRing) -> bool {
        other.0.m.is_multiple_of(self.0.m) && (self.0.d.is_none() || self.0.d == other.0.d)
    }

    /// Smallest ring containing both, when it is of the supported shape.
    pub fn join(&self, other: &CoeffRing) -> Result<CoeffRing> {
        if self == other {
            return Ok(self.clone());
        }
        let d = match (self.0.d, other.0.d) {
            (Some(a), Some(b)) if a != b => {
                return Err(Error::RingMismatch(format!("{self:?} and {other:?}")))
            }
            (a, b) => a.or(b),
        };
        let m = self.0.m.lcm(&other.0.m);
        CoeffRing::new(m, d)
    }
}

fn reduce_mod_phi(poly: &[Rat], phi: &[Rat]) -> Vec<Rat> {
    let n = phi.len() - 1;
    let mut r: Vec<Rat> = poly.to_vec();
    if r.len() < n {
        r.resize(n, Rat::zero());
    }
    for k in (n..r.len()).rev() {
        let c = std::mem::take(&mut r[k]);
        if c.is_zero() {
            continue;
        }
        // x^k = x^(k-n) * x^n and x^n = -(phi_0 + ... + phi_{n-1} x^{n-1})
        for (j, pj) in phi.iter().take(n).enumerate() {
            r[k - n + j] -= &c * pj;
        }
    }
    r.truncate(n);
    r
}

/// Element of a [`CoeffRing`], always stored fully reduced as coefficients of
/// the basis g1^i g2^j (index i + j * deg1).
#[derive(Clone)]
pub struct CoeffElem {
    ring: CoeffRing,
    c: Vec<Rat>,
}

impl PartialEq for CoeffElem {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.c == other.c
    }
}

impl Eq for CoeffElem {}

impl CoeffElem {
    pub fn ring(&self) -> &CoeffRing {
        &self.ring
    }

    pub fn coords(&self) -> &[Rat] {
        &self.c
    }

    /// The rational value, if every irrational coordinate vanishes.
    pub fn as_rat(&self) -> Option<Rat> {
        if self.c[1..].iter().all(Zero::is_zero) {
            Some(self.c[0].clone())
        } else {
            None
        }
    }

    pub fn is_rational(&self) -> bool {
        self.as_rat().is_some()
    }

    pub fn scale(&self, q: &Rat) -> CoeffElem {
        CoeffElem { ring: self.ring.clone(), c: self.c.iter().map(|x| x * q).collect() }
    }

    fn same_ring(&self, other: &CoeffElem) {
        assert!(
            self.ring == other.ring,
            "mixing {:?} and {:?}",
            self.ring,
            other.ring
        );
    }

    /// Image under the embedding into a larger ring.
    pub fn lift(&self, target: &CoeffRing) -> Result<CoeffElem> {
        if &self.ring == target {
            return Ok(self.clone());
        }
        if !self.ring.embeds_into(target) {
            return Err(Error::RingMismatch(format!("{:?} into {:?}", self.ring, target)));
        }
        let step = (target.0.m / self.ring.0.m) as usize;
        let n1 = self.ring.deg1();
        let mut out = target.zero();
        for j in 0..self.ring.deg2() {
            let mut poly = vec![Rat::zero(); (n1.max(1) - 1) * step + 1];
            for i in 0..n1 {
                poly[i * step] = self.c[i + j * n1].clone();
            }
            let part = target.reduce_g1_poly(&poly, j);
            out = out.plus(&part);
        }
        Ok(out)
    }

    /// Galois conjugate sending sqrt(D) to -sqrt(D).
    pub fn conj_sqrt(&self) -> CoeffElem {
        let mut e = self.clone();
        if self.ring.deg2() == 2 {
            let n1 = self.ring.deg1();
            for x in &mut e.c[n1..] {
                *x = -x.clone();
            }
        }
        e
    }

    /// Multiplicative inverse, by solving the linear system of multiplication by self.
    pub fn inverse(&self) -> Result<CoeffElem> {
        let dim = self.ring.dim();
        let mut cols = Vec::with_capacity(dim);
        for k in 0..dim {
            let mut basis = self.ring.zero();
            basis.c[k] = Rat::one();
            cols.push(self.times(&basis).c);
        }
        let m = Matrix::from_columns(&cols);
        let mut rhs = vec![Rat::zero(); dim];
        rhs[0] = Rat::one();
        let sol = m
            .solve(&rhs)
            .map_err(|_| Error::NotInvertible(format!("{:?}", self.ring)))?;
        Ok(CoeffElem { ring: self.ring.clone(), c: sol })
    }

    pub fn div(&self, other: &CoeffElem) -> Result<CoeffElem> {
        Ok(self.times(&other.inverse()?))
    }

    pub fn pow(&self, k: u32) -> CoeffElem {
        let mut acc = self.ring.one();
        for _ in 0..k {
            acc = acc.times(self);
        }
        acc
    }
}

impl Ring for CoeffElem {
    fn zero_like(&self) -> Self {
        self.ring.zero()
    }
    fn one_like(&self) -> Self {
        self.ring.one()
    }
    fn vanishes(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self.same_ring(rhs);
        CoeffElem {
            ring: self.ring.clone(),
            c: self.c.iter().zip(&rhs.c).map(|(a, b)| a + b).collect(),
        }
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.same_ring(rhs);
        CoeffElem {
            ring: self.ring.clone(),
            c: self.c.iter().zip(&rhs.c).map(|(a, b)| a - b).collect(),
        }
    }
    fn times(&self, rhs: &Self) -> Self {
        self.same_ring(rhs);
        let n1 = self.ring.deg1();
        let n2 = self.ring.deg2();
        if self.c.len() == 1 {
            return CoeffElem { ring: self.ring.clone(), c: vec![&self.c[0] * &rhs.c[0]] };
        }
        // Product of the g2-components, each a g1-polynomial of degree < 2 n1 - 1.
        let mut parts = vec![vec![Rat::zero(); 2 * n1 - 1]; 2 * n2 - 1];
        for ja in 0..n2 {
            for ia in 0..n1 {
                let a = &self.c[ia + ja * n1];
                if a.is_zero() {
                    continue;
                }
                for jb in 0..n2 {
                    for ib in 0..n1 {
                        let b = &rhs.c[ib + jb * n1];
                        if b.is_zero() {
                            continue;
                        }
                        parts[ja + jb][ia + ib] += a * b;
                    }
                }
            }
        }
        if n2 == 2 {
            // g2^2 = D
            let d = int(self.ring.0.d.expect("deg2 = 2 implies D"));
            let high = parts.pop().unwrap();
            for (x, h) in parts[0].iter_mut().zip(high) {
                *x += h * &d;
            }
        }
        let mut out = self.ring.zero();
        for (j, poly) in parts.iter().enumerate() {
            for (i, v) in reduce_mod_phi(poly, &self.ring.0.phi).into_iter().enumerate() {
                out.c[i + j * n1] = v;
            }
        }
        out
    }
    fn negated(&self) -> Self {
        CoeffElem { ring: self.ring.clone(), c: self.c.iter().map(|x| -x).collect() }
    }
}

impl fmt::Debug for CoeffElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Rationals print as `p/q`; other elements as a sum of basis monomials in
/// `z` (the root of unity) and `s` (the square root).
impl fmt::Display for CoeffElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rat() {
            return write!(f, "{}", fmt_rat(&q));
        }
        let n1 = self.ring.deg1();
        let mut parts = Vec::new();
        for (k, v) in self.c.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let (i, j) = (k % n1, k / n1);
            let mut mono = String::new();
            if i == 1 {
                mono.push_str("*z");
            } else if i > 1 {
                mono.push_str(&format!("*z^{i}"));
            }
            if j == 1 {
                mono.push_str("*s");
            }
            let coeff = if v.is_negative() {
                format!("({})", fmt_rat(v))
            } else {
                fmt_rat(v)
            };
            parts.push(format!("{coeff}{mono}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Numerical approximation, for human-readable reports only.
pub fn approx_f64(q: &Rat) -> f64 {
    let n = q.numer().to_f64().unwrap_or(f64::NAN);
    let d = q.denom().to_f64().unwrap_or(f64::NAN);
    n / d
}
