use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::dirichlet::DirichletChar;
use crate::cones::sigma_decompose_with;
use crate::error::{Error, Result};
use crate::exactnum::rat::{binomial, factorial};
use crate::exactnum::{CoeffElem, CoeffRing, Matrix, Rat, Ring};
use crate::exec::Exec;
use crate::pairing::{pair_combo, QuotSeries, SchwartzFn};

/// `Q(sqrt D)` with its ring of integers `Z + Z w`, where `w = sqrt D`, or
/// `(1 + sqrt D)/2` when `D = 1 mod 4`.
#[derive(Clone, Debug)]
pub struct RealQuadField {
    d: i64,
    disc: i64,
    /// `w^2 = trace * w - norm`.
    trace: i64,
    norm: i64,
    fundamental_unit: (BigInt, BigInt),
    fundamental_unit_norm: i8,
    positive_unit: (BigInt, BigInt),
    narrow_class_number: u64,
    ring: CoeffRing,
}

fn is_square_free(d: i64) -> bool {
    let mut k = 2i64;
    while k * k <= d {
        if d % (k * k) == 0 {
            return false;
        }
        k += 1;
    }
    true
}

impl RealQuadField {
    pub fn new(d: i64) -> Result<Self> {
        if d <= 1 || !is_square_free(d) {
            return Err(Error::NotSquareFree(d));
        }
        let (disc, trace, norm) = if d.rem_euclid(4) == 1 { (d, 1, (1 - d) / 4) } else { (4 * d, 0, -d) };
        let ring = CoeffRing::new(1, Some(d))?;
        let mut k = RealQuadField {
            d,
            disc,
            trace,
            norm,
            fundamental_unit: (BigInt::zero(), BigInt::zero()),
            fundamental_unit_norm: 0,
            positive_unit: (BigInt::zero(), BigInt::zero()),
            narrow_class_number: 0,
            ring,
        };
        let (x, y) = k.fundamental_unit_by_continued_fraction()?;
        let nrm = k.norm_of(&x, &y);
        k.fundamental_unit_norm = if nrm.is_one() { 1 } else { -1 };
        k.positive_unit = if nrm.is_one() { (x.clone(), y.clone()) } else { k.mul(&(x.clone(), y.clone()), &(x.clone(), y.clone())) };
        k.fundamental_unit = (x, y);
        k.narrow_class_number = narrow_class_number(disc);
        Ok(k)
    }

    pub fn radicand(&self) -> i64 {
        self.d
    }

    pub fn discriminant(&self) -> i64 {
        self.disc
    }

    /// `CoeffRing` `Q(sqrt D)` holding the embeddings.
    pub fn ring(&self) -> &CoeffRing {
        &self.ring
    }

    /// Coordinates `(x, y)` of `x + y w`.
    pub fn fundamental_unit(&self) -> &(BigInt, BigInt) {
        &self.fundamental_unit
    }

    pub fn fundamental_unit_norm(&self) -> i8 {
        self.fundamental_unit_norm
    }

    /// Generator of the totally positive units.
    pub fn totally_positive_unit(&self) -> &(BigInt, BigInt) {
        &self.positive_unit
    }

    pub fn narrow_class_number(&self) -> u64 {
        self.narrow_class_number
    }

    pub fn require_narrow_class_number_one(&self) -> Result<()> {
        if self.narrow_class_number == 1 {
            Ok(())
        } else {
            Err(Error::NarrowClassNumberNotOne { d: self.d, h: self.narrow_class_number })
        }
    }

    pub fn norm_of(&self, x: &BigInt, y: &BigInt) -> BigInt {
        x * x + BigInt::from(self.trace) * x * y + BigInt::from(self.norm) * y * y
    }

    pub fn mul(&self, a: &(BigInt, BigInt), b: &(BigInt, BigInt)) -> (BigInt, BigInt) {
        // (x1 + y1 w)(x2 + y2 w) with w^2 = t w - n
        let (x1, y1) = a;
        let (x2, y2) = b;
        let yy = y1 * y2;
        (
            x1 * x2 - BigInt::from(self.norm) * &yy,
            x1 * y2 + y1 * x2 + BigInt::from(self.trace) * &yy,
        )
    }

    /// Matrix of multiplication by `x + y w` in the basis `(1, w)`.
    pub fn mult_matrix(&self, e: &(BigInt, BigInt)) -> Matrix {
        let (x, y) = e;
        let q = |v: BigInt| Rat::from_integer(v);
        Matrix::from_rows(&[
            vec![q(x.clone()), q(-BigInt::from(self.norm) * y)],
            vec![q(y.clone()), q(x + BigInt::from(self.trace) * y)],
        ])
    }

    pub fn unit_matrix(&self) -> Matrix {
        self.mult_matrix(&self.positive_unit)
    }

    /// `(tau_1(w), tau_2(w))`, with `tau_1` taking the positive square root.
    pub fn omega_embeddings(&self) -> (CoeffElem, CoeffElem) {
        let s = self.ring.sqrt_d().expect("field ring has a square root");
        if self.trace == 1 {
            let half = Rat::new(BigInt::one(), BigInt::from(2));
            let one = self.ring.one();
            (one.plus(&s).scale(&half), one.minus(&s).scale(&half))
        } else {
            (s.clone(), s.negated())
        }
    }

    /// `(tau_1(v), tau_2(v))` for `v = v0 + v1 w`.
    pub fn embed(&self, v: &[Rat]) -> (CoeffElem, CoeffElem) {
        let (w1, w2) = self.omega_embeddings();
        let base = self.ring.from_rat(v[0].clone());
        (base.plus(&w1.scale(&v[1])), base.plus(&w2.scale(&v[1])))
    }

    /// Rows `j`, columns `i`: `tau_i(b_j)` for the basis `b = (1, w)`.
    pub fn transition(&self) -> Vec<Vec<CoeffElem>> {
        let (w1, w2) = self.omega_embeddings();
        vec![vec![self.ring.one(), self.ring.one()], vec![w1, w2]]
    }

    /// Walks the continued fraction of `w` until a convergent `h/k` makes
    /// `h - k w'` a unit.
    fn fundamental_unit_by_continued_fraction(&self) -> Result<(BigInt, BigInt)> {
        let dd = BigInt::from(self.d);
        let s = dd.sqrt();
        let (mut p, mut q) = if self.trace == 1 { (BigInt::one(), BigInt::from(2)) } else { (BigInt::zero(), BigInt::one()) };
        let (mut h_prev, mut h) = (BigInt::zero(), BigInt::one());
        let (mut k_prev, mut k) = (BigInt::one(), BigInt::zero());
        let limit = 4 * (self.disc as usize) + 16;
        for _ in 0..limit {
            if !q.is_positive() {
                return Err(Error::Inconsistent(format!("continued fraction of D={} left the reduced range", self.d)));
            }
            let a = (&p + &s).div_floor(&q);
            let h_next = &a * &h + &h_prev;
            let k_next = &a * &k + &k_prev;
            h_prev = std::mem::replace(&mut h, h_next);
            k_prev = std::mem::replace(&mut k, k_next);
            let x = &h - &k * BigInt::from(self.trace);
            let nrm = self.norm_of(&x, &k);
            if nrm.abs().is_one() {
                return Ok((x, k.clone()));
            }
            p = &a * &q - &p;
            q = (&dd - &p * &p) / &q;
        }
        Err(Error::Inconsistent(format!("no unit found for D={}", self.d)))
    }
}

/// Number of cycles of reduced primitive indefinite forms of discriminant
/// `disc` under the reduction operator, i.e. the narrow class number.
pub fn narrow_class_number(disc: i64) -> u64 {
    let s = disc.sqrt();
    let reduced = |a: i64, b: i64| -> bool {
        let a2 = 2 * a.abs();
        b > 0 && b * b < disc && disc < (a2 + b) * (a2 + b) && (a2 - b < 0 || (a2 - b) * (a2 - b) < disc)
    };
    let mut forms: Vec<(i64, i64, i64)> = Vec::new();
    let mut b = 1;
    while b * b < disc {
        if (b - disc).rem_euclid(2) == 0 {
            let n = (disc - b * b) / 4;
            for a_abs in 1..=n {
                if n % a_abs != 0 {
                    continue;
                }
                for a in [a_abs, -a_abs] {
                    let c = -n / a;
                    if reduced(a, b) && a.gcd(&b).gcd(&c) == 1 {
                        forms.push((a, b, c));
                    }
                }
            }
        }
        b += 1;
    }
    let rho = |(_, b, c): (i64, i64, i64)| -> (i64, i64, i64) {
        let m = 2 * c.abs();
        let b2 = s - (s + b).rem_euclid(m);
        (c, b2, (b2 * b2 - disc) / (4 * c))
    };
    let mut seen: Vec<(i64, i64, i64)> = Vec::new();
    let mut cycles = 0;
    for &f in &forms {
        if seen.contains(&f) {
            continue;
        }
        cycles += 1;
        let mut g = f;
        loop {
            seen.push(g);
            g = rho(g);
            if g == f || seen.contains(&g) {
                break;
            }
        }
    }
    cycles
}

/// The character `x + y w -> chi(Norm(x + y w))` as a function on `Z^2`.
pub fn norm_character(k: &RealQuadField, chi: &DirichletChar) -> Result<SchwartzFn> {
    let f = chi.modulus();
    SchwartzFn::from_fn(2, 1, f, chi.ring(), |c| {
        let nrm = k.norm_of(&BigInt::from(c[0]), &BigInt::from(c[1]));
        let r = nrm.mod_floor(&BigInt::from(f)).to_i64().expect("small residue");
        chi.eval(r)
    })
}

/// A special value with both one-sided readings it averages.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadLValue {
    pub value: CoeffElem,
    /// Reading with `t_1` dominant and with `t_2` dominant.
    pub one_sided: (CoeffElem, CoeffElem),
    pub cones: usize,
}

/// `prod_k 1/(1 + beta_k x)` through `x^len-1`.
fn inverse_product(betas: &[CoeffElem], len: usize, ring: &CoeffRing) -> Vec<CoeffElem> {
    let mut out = vec![ring.zero(); len];
    out[0] = ring.one();
    for b in betas {
        // multiply by sum (-b)^m x^m
        let mut next = vec![ring.zero(); len];
        let nb = b.negated();
        for (i, c) in out.iter().enumerate() {
            if c.vanishes() {
                continue;
            }
            let mut p = c.clone();
            for slot in next.iter_mut().skip(i) {
                *slot = slot.plus(&p);
                p = p.times(&nb);
            }
        }
        out = next;
    }
    out
}

/// Coefficient of `t1^r t2^r` in the expansion of `q` after `z = T t`, read
/// with `t_1` dominant (`swap = false`) or `t_2` dominant (`swap = true`).
fn one_sided_coefficient(
    q: &QuotSeries,
    k: &RealQuadField,
    ring: &CoeffRing,
    r: u32,
    swap: bool,
) -> Result<CoeffElem> {
    let big = q.pole_order();
    let top = 2 * r + big;
    let t: Vec<Vec<CoeffElem>> = k
        .transition()
        .iter()
        .map(|row| row.iter().map(|c| c.lift(ring)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let num = q.numerator().lift(ring)?.component(top)?.substitute_linear(&t)?;
    let mut lead = ring.one();
    let mut betas = Vec::new();
    for (form, &m) in q.denominators() {
        let (a, b) = k.embed(form);
        let (a, b) = (a.lift(ring)?, b.lift(ring)?);
        let (a, b) = if swap { (b, a) } else { (a, b) };
        if a.vanishes() {
            return Err(Error::ZeroForm(format!("{form:?} has a vanishing embedding")));
        }
        let beta = b.div(&a)?;
        for _ in 0..m {
            lead = lead.times(&a);
            betas.push(beta.clone());
        }
    }
    let cs = inverse_product(&betas, r as usize + 1, ring);
    let mut acc = ring.zero();
    for j in 0..=r {
        let e = if swap { vec![j, top - j] } else { vec![top - j, j] };
        let p = num.coeff(&e)?;
        if !p.vanishes() {
            acc = acc.plus(&p.times(&cs[(r - j) as usize]));
        }
    }
    acc.div(&lead)
}

/// `L(phi, -r)` for a function `phi` on `Z^2 = O_K`, through the pairing of
/// the cocycle at `(1, u)`. Needs `dmax >= 2 r`.
pub fn quad_l_value_detailed(
    k: &RealQuadField,
    phi: &SchwartzFn,
    r: u32,
    dmax: u32,
    exec: Exec,
) -> Result<QuadLValue> {
    if r == 0 {
        return Err(Error::InvalidCharacter("r must be at least 1".into()));
    }
    if dmax < 2 * r {
        return Err(Error::TruncationTooSmall { have: dmax + 1, need: 2 * r + 1 });
    }
    if phi.dim() != 2 {
        return Err(Error::DimensionMismatch(format!("function on Q^{} for a quadratic field", phi.dim())));
    }
    let combo = sigma_decompose_with(&[Matrix::identity(2), k.unit_matrix()], exec)?;
    let q = pair_combo(&combo, phi, dmax, exec)?;
    let ring = phi.ring().join(k.ring())?;
    let c1 = one_sided_coefficient(&q, k, &ring, r, false)?;
    let c2 = one_sided_coefficient(&q, k, &ring, r, true)?;
    let rf = Rat::from_integer(factorial(r));
    let w = &rf * &rf;
    let half = Rat::new(BigInt::one(), BigInt::from(2));
    Ok(QuadLValue {
        value: c1.plus(&c2).scale(&(&w * half)),
        one_sided: (c1.scale(&w), c2.scale(&w)),
        cones: combo.len(),
    })
}

/// Checks the narrow class number and returns `L(phi, -r)`.
pub fn quad_l_value(k: &RealQuadField, phi: &SchwartzFn, r: u32, dmax: u32) -> Result<CoeffElem> {
    k.require_narrow_class_number_one()?;
    Ok(quad_l_value_detailed(k, phi, r, dmax, Exec::default())?.value)
}

/// `zeta_K(-r)`.
pub fn dedekind_zeta(k: &RealQuadField, r: u32, dmax: u32) -> Result<CoeffElem> {
    quad_l_value(k, &SchwartzFn::lattice_indicator(2, &CoeffRing::rationals()), r, dmax)
}

/// Taylor data `S(m1, m2) = m1! m2! [z1^m1 z2^m2]` of the pairing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SCoeffs {
    pub rmax: u32,
    pub table: BTreeMap<(u32, u32), CoeffElem>,
}

/// `S(m1, m2)` for `m1 + m2 <= 2 rmax`; fails with `NotDivisible` when the
/// pairing keeps a pole.
pub fn s_coeffs(k: &RealQuadField, phi: &SchwartzFn, rmax: u32, dmax: u32, exec: Exec) -> Result<SCoeffs> {
    if dmax < 2 * rmax {
        return Err(Error::TruncationTooSmall { have: dmax + 1, need: 2 * rmax + 1 });
    }
    let combo = sigma_decompose_with(&[Matrix::identity(2), k.unit_matrix()], exec)?;
    let q = pair_combo(&combo, phi, dmax, exec)?;
    let s = q.reduce_to_power_series()?;
    let mut table = BTreeMap::new();
    for total in 0..=2 * rmax {
        for m1 in 0..=total {
            let m2 = total - m1;
            let f = Rat::from_integer(factorial(m1) * factorial(m2));
            table.insert((m1, m2), s.coeff(&[m1, m2])?.scale(&f));
        }
    }
    Ok(SCoeffs { rmax, table })
}

/// `L(phi, -r)` from the Taylor data, expanding
/// `(t1 + t2)^m1 (w t1 + w' t2)^m2` with binomial coefficients.
pub fn quad_l_from_s_coeffs(k: &RealQuadField, s: &SCoeffs, r: u32) -> Result<CoeffElem> {
    if r > s.rmax {
        return Err(Error::TruncationTooSmall { have: 2 * s.rmax + 1, need: 2 * r + 1 });
    }
    let ring = s
        .table
        .values()
        .next()
        .map(|c| c.ring().join(k.ring()))
        .transpose()?
        .unwrap_or_else(|| k.ring().clone());
    let (w1, w2) = k.omega_embeddings();
    let (w1, w2) = (w1.lift(&ring)?, w2.lift(&ring)?);
    let mut acc = ring.zero();
    for m1 in 0..=2 * r {
        let m2 = 2 * r - m1;
        let sv = s.table[&(m1, m2)].lift(&ring)?;
        if sv.vanishes() {
            continue;
        }
        // t1 power i from the first factor, r - i from the second.
        let mut inner = ring.zero();
        for i in 0..=m1.min(r) {
            let j = r - i;
            if j > m2 {
                continue;
            }
            let c = Rat::from_integer(binomial(m1, i) * binomial(m2, j));
            inner = inner.plus(&w1.pow(j).times(&w2.pow(m2 - j)).scale(&c));
        }
        let f = Rat::from_integer(factorial(m1) * factorial(m2));
        acc = acc.plus(&sv.times(&inner).scale(&(Rat::one() / f)));
    }
    let rf = Rat::from_integer(factorial(r));
    Ok(acc.scale(&(&rf * &rf)))
}
