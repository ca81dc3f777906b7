use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::quot::QuotSeries;
use super::schwartz::{FiniteSupportFn, SchwartzFn};
use super::series::Series;
use crate::cones::{ConeCombo, OpenSimplicialCone};
use crate::error::{Error, Result};
use crate::exactnum::rat::{factorial, primitive, primitive_up_to_sign};
use crate::exactnum::{CoeffElem, CoeffRing, Rat, Ring};
use crate::exec::Exec;

/// Monomials of total degree below `prec`, each with a recipe to build its
/// value from a smaller one.
struct Monomials {
    exps: Vec<Vec<u32>>,
    /// For each monomial after the first: (index of the monomial divided by
    /// one variable, that variable).
    parent: Vec<(usize, usize)>,
}

impl Monomials {
    fn new(n: usize, prec: u32) -> Self {
        let mut exps: Vec<Vec<u32>> = vec![vec![0; n]];
        let mut parent = vec![(0, 0)];
        let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
        index.insert(vec![0; n], 0);
        let mut start = 0;
        for _ in 1..prec {
            let end = exps.len();
            for k in start..end {
                // Extend only at or after the last nonzero variable: each
                // monomial is produced once.
                let last = exps[k].iter().rposition(|&x| x > 0).unwrap_or(0);
                for j in last..n {
                    let mut e = exps[k].clone();
                    e[j] += 1;
                    if !index.contains_key(&e) {
                        index.insert(e.clone(), exps.len());
                        exps.push(e);
                        parent.push((k, j));
                    }
                }
            }
            start = end;
        }
        Monomials { exps, parent }
    }

    /// `w^e` for every monomial `e`.
    fn powers(&self, w: &[Rat]) -> Vec<Rat> {
        let mut out: Vec<Rat> = Vec::with_capacity(self.exps.len());
        out.push(Rat::one());
        for &(k, j) in &self.parent[1..] {
            let v = &out[k] * &w[j];
            out.push(v);
        }
        out
    }

    /// `1 / e!` for every monomial.
    fn inverse_factorials(&self) -> Vec<Rat> {
        self.exps
            .iter()
            .map(|e| {
                let d: BigInt = e.iter().map(|&k| factorial(k)).product();
                Rat::new(BigInt::one(), d)
            })
            .collect()
    }
}

/// `sum_w c_w exp(w . z)` for a list of weighted points, grouped by weight so
/// that the inner loop stays in rational arithmetic.
fn exponential_sum(ring: &CoeffRing, n: usize, points: &[(Vec<Rat>, CoeffElem)], prec: u32) -> Series {
    let mons = Monomials::new(n, prec);
    let mut moments: BTreeMap<Vec<Rat>, (CoeffElem, Vec<Rat>)> = BTreeMap::new();
    for (w, c) in points {
        let key = c.coords().to_vec();
        let entry = moments
            .entry(key)
            .or_insert_with(|| (c.clone(), vec![Rat::zero(); mons.exps.len()]));
        for (acc, p) in entry.1.iter_mut().zip(mons.powers(w)) {
            *acc += p;
        }
    }
    let inv = mons.inverse_factorials();
    let mut out = Series::zero(ring, n, prec);
    for (c, sums) in moments.values() {
        for ((e, s), f) in mons.exps.iter().zip(sums).zip(&inv) {
            if !s.is_zero() {
                out.add_term(e.clone(), c.scale(&(s * f)));
            }
        }
    }
    out
}

/// `Phi(A) = sum_w A(w) exp(w . z)`, exact through degree `dmax`.
pub fn phi_map(a: &FiniteSupportFn, dmax: u32) -> QuotSeries {
    let pts: Vec<(Vec<Rat>, CoeffElem)> = a.values().iter().map(|(w, c)| (w.clone(), c.clone())).collect();
    let s = exponential_sum(a.ring(), a.dim(), &pts, dmax + 1);
    QuotSeries::from_series(s, dmax).expect("precision matches")
}

/// Points of `(1/d) Z^n` of the form `sum x_i v_i` with every `x_i` in (0, 1].
pub fn parallelotope_points(gens: &[Vec<Rat>], d: u64) -> Result<Vec<Vec<Rat>>> {
    let Some(first) = gens.first() else {
        return Ok(Vec::new());
    };
    let n = first.len();
    let cone = OpenSimplicialCone::new(gens.to_vec())?;
    let r = gens.len();
    let d_big = BigInt::from(d);
    if r == 1 {
        // With v = c p and p primitive, t v lies in (1/d)Z^n exactly when
        // t c d is an integer.
        let p = primitive(&gens[0]);
        let c = gens[0].iter().zip(&p).find(|(_, y)| !y.is_zero()).map(|(x, y)| x / y).expect("nonzero");
        let top = (c * Rat::from_integer(d_big.clone())).floor().to_integer();
        let mut out = Vec::new();
        let mut j = BigInt::one();
        while j <= top {
            let t = Rat::new(j.clone(), d_big.clone());
            out.push(p.iter().map(|x| x * &t).collect());
            j += 1;
        }
        return Ok(out);
    }
    Ok(scan_box(gens, &cone, d, n))
}

/// Exhaustive scan of the bounding box with an exact coordinate test.
fn scan_box(gens: &[Vec<Rat>], cone: &OpenSimplicialCone, d: u64, n: usize) -> Vec<Vec<Rat>> {
    let d_rat = Rat::from_integer(BigInt::from(d));
    let mut lo = vec![BigInt::zero(); n];
    let mut hi = vec![BigInt::zero(); n];
    for a in 0..n {
        let mut mn = Rat::zero();
        let mut mx = Rat::zero();
        for g in gens {
            if g[a].is_negative() {
                mn += &g[a];
            } else {
                mx += &g[a];
            }
        }
        lo[a] = (mn * &d_rat).floor().to_integer();
        hi[a] = (mx * &d_rat).ceil().to_integer();
    }
    // Each given generator is a positive multiple of one primitive generator.
    let mut slots = Vec::with_capacity(gens.len());
    let mut scales = Vec::with_capacity(gens.len());
    for g in gens {
        let p = primitive(g);
        let i = cone.generators().iter().position(|h| *h == p).expect("generator of the cone");
        let k = g.iter().zip(&p).find(|(_, y)| !y.is_zero()).map(|(x, y)| x / y).expect("nonzero");
        slots.push(i);
        scales.push(k);
    }
    let mut out = Vec::new();
    let mut cur = lo.clone();
    'outer: loop {
        let w: Vec<Rat> = cur.iter().map(|m| Rat::new(m.clone(), BigInt::from(d))).collect();
        if let Some(x) = cone.coordinates(&w) {
            // Coordinates against the primitive generators, rescaled to the
            // given ones.
            let inside = slots.iter().zip(&scales).all(|(&i, c)| {
                let t = &x[i] / c;
                t.is_positive() && t <= Rat::one()
            });
            if inside {
                out.push(w);
            }
        }
        for a in 0..n {
            cur[a] += 1;
            if cur[a] <= hi[a] {
                continue 'outer;
            }
            cur[a] = lo[a].clone();
        }
        break;
    }
    out
}

/// Smallest positive integer `k` with `k v` in `f Z^n`.
fn lattice_multiplier(v: &[Rat], f: u64) -> BigInt {
    let f = BigInt::from(f);
    v.iter().fold(BigInt::one(), |acc, x| {
        let y = x / Rat::from_integer(f.clone());
        acc.lcm(y.denom())
    })
}

/// The pairing of an open simplicial cone with a Schwartz function, exact
/// through total degree `dmax`.
pub fn pair_cone(cone: &OpenSimplicialCone, phi: &SchwartzFn, dmax: u32) -> Result<QuotSeries> {
    pair_cone_with_scales(cone, phi, dmax, &vec![1; cone.dim()])
}

/// As [`pair_cone`], with each lattice-adjusted generator further multiplied
/// by `extra[i]`; the result does not depend on `extra`.
pub fn pair_cone_with_scales(
    cone: &OpenSimplicialCone,
    phi: &SchwartzFn,
    dmax: u32,
    extra: &[u64],
) -> Result<QuotSeries> {
    let n = phi.dim();
    if cone.ambient_dim() != n {
        return Err(Error::DimensionMismatch(format!(
            "cone {cone:?} in Q^{} against a function on Q^{n}",
            cone.ambient_dim()
        )));
    }
    if extra.len() != cone.dim() || extra.contains(&0) {
        return Err(Error::DimensionMismatch(format!(
            "{} positive scale factors for a cone with {} generators",
            extra.len(),
            cone.dim()
        )));
    }
    let r = cone.dim() as u32;
    let vs = scaled_generators(cone, phi.period(), extra);
    let prec = dmax + 1 + r;
    let pts = parallelotope_points(&vs, phi.support_denominator())?;
    let mut weighted = Vec::with_capacity(pts.len());
    for w in pts {
        let c = phi.eval(&w)?;
        if !c.vanishes() {
            weighted.push((w, c));
        }
    }
    let ring = phi.ring();
    let mut num = exponential_sum(ring, n, &weighted, prec);
    if !num.is_zero() {
        for v in &vs {
            num = num.mul(&Series::bernoulli_linear(ring, v, prec));
        }
    }
    if r % 2 == 1 {
        num = num.neg();
    }
    QuotSeries::new(num, &vs, dmax)
}

/// Pairs a cone combination with `phi`. Cones are paired concurrently and
/// summed in a fixed order, so the result never depends on scheduling.
pub fn pair_combo(c: &ConeCombo, phi: &SchwartzFn, dmax: u32, exec: Exec) -> Result<QuotSeries> {
    if c.dim() != phi.dim() {
        return Err(Error::DimensionMismatch(format!(
            "combination on Q^{} against a function on Q^{}",
            c.dim(),
            phi.dim()
        )));
    }
    if !c.constant_term().is_zero() && !phi.vanishes_near_zero() {
        return Err(Error::ConstantAgainstNonVanishing);
    }
    let mut terms: Vec<(Rat, OpenSimplicialCone)> = c.terms().to_vec();
    terms.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    let parts = exec.map(&terms, |(k, cone)| {
        pair_cone(cone, phi, dmax).map(|q| q.scale_rat(k)).map_err(|e| e.context(format!("pairing cone {cone:?}")))
    });
    let mut acc = QuotSeries::zero(phi.ring(), phi.dim(), dmax);
    for p in parts {
        acc = acc.add(&p?)?;
    }
    Ok(acc)
}

/// The series `prod (1 - exp(v_i . z)) / prod(primitive form of v_i)`, the
/// factor turning a cone's pairing back into its parallelotope sum.
pub fn cone_denominator_factor(vs: &[Vec<Rat>], ring: &CoeffRing, prec: u32) -> Series {
    let n = vs.first().map_or(0, Vec::len);
    let mut out = Series::one(ring, n, prec);
    for v in vs {
        let (_, c) = primitive_up_to_sign(v);
        // (1 - e^t) / t = -sum t^m / (m+1)!
        let coeffs: Vec<Rat> =
            (0..prec).map(|m| -Rat::new(BigInt::one(), factorial(m + 1))).collect();
        out = out.mul(&Series::of_linear(ring, v, &coeffs, prec)).scale_rat(&c);
    }
    out
}

/// The generators actually used by [`pair_cone`]: lattice-adjusted and then
/// multiplied by `extra`.
pub fn scaled_generators(cone: &OpenSimplicialCone, period: u64, extra: &[u64]) -> Vec<Vec<Rat>> {
    cone.generators()
        .iter()
        .zip(extra)
        .map(|(g, &e)| {
            let k = Rat::from_integer(lattice_multiplier(g, period) * BigInt::from(e));
            g.iter().map(|x| x * &k).collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{bernoulli_poly, int, rat};

    fn q() -> CoeffRing {
        CoeffRing::rationals()
    }

    fn pts(gens: &[&[i64]], d: u64) -> Vec<Vec<Rat>> {
        let g: Vec<Vec<Rat>> = gens.iter().map(|v| v.iter().map(|&x| int(x)).collect()).collect();
        let mut p = parallelotope_points(&g, d).unwrap();
        p.sort();
        p
    }

    #[test]
    fn rays_keep_their_direction() {
        let pts = parallelotope_points(&[vec![int(-2), int(4)]], 1).unwrap();
        assert_eq!(pts, vec![vec![int(-1), int(2)], vec![int(-2), int(4)]]);
    }

    #[test]
    fn small_parallelotopes() {
        assert_eq!(pts(&[&[2]], 1), vec![vec![int(1)], vec![int(2)]]);
        assert_eq!(pts(&[&[1, 0], &[0, 1]], 1), vec![vec![int(1), int(1)]]);
        // The volume is 2; (1,2) is the second generator itself, with first
        // coordinate 0, so it is excluded.
        assert_eq!(pts(&[&[1, 0], &[1, 2]], 1), vec![vec![int(1), int(1)], vec![int(2), int(2)]]);
        assert_eq!(pts(&[&[2, 0], &[2, 2]], 1).len(), 4);
        assert_eq!(pts(&[&[0, 3], &[2, -2]], 2).len(), 24);
        assert_eq!(pts(&[&[1, 0], &[0, 1]], 2).len(), 4);
        assert_eq!(pts(&[&[3, 0]], 2).len(), 6);
    }

    #[test]
    fn ray_against_the_integers() {
        // e^z / (1 - e^z) = -(1/z) sum B_m(1) z^m / m!
        let cone = OpenSimplicialCone::from_ints(&[&[1]]).unwrap();
        let phi = SchwartzFn::lattice_indicator(1, &q());
        let p = pair_cone(&cone, &phi, 6).unwrap();
        for k in -1..=6i64 {
            let m = (k + 1) as u32;
            let expected = -bernoulli_poly(m, &int(1)) / Rat::from_integer(factorial(m));
            assert_eq!(p.laurent_coeff_1d(k).unwrap().as_rat().unwrap(), expected, "z^{k}");
        }
        assert!(matches!(p.reduce_to_power_series(), Err(Error::NotDivisible { .. })));
    }

    #[test]
    fn ray_against_the_character_mod_three() {
        let r = q();
        let chi = SchwartzFn::from_fn(1, 1, 3, &r, |c| match c[0] {
            1 => r.one(),
            2 => r.from_int(-1),
            _ => r.zero(),
        })
        .unwrap();
        let cone = OpenSimplicialCone::from_ints(&[&[1]]).unwrap();
        let p = pair_cone(&cone, &chi, 4).unwrap();
        assert!(p.laurent_coeff_1d(-1).unwrap().vanishes());
        assert_eq!(p.laurent_coeff_1d(0).unwrap().as_rat().unwrap(), rat(1, 3));
        let s = p.reduce_to_power_series().unwrap();
        assert_eq!(s.coeff(&[0]).unwrap().as_rat().unwrap(), rat(1, 3));
    }

    #[test]
    fn constant_needs_vanishing_function() {
        let c = ConeCombo::constant(1, int(1));
        let phi = SchwartzFn::lattice_indicator(1, &q());
        assert_eq!(pair_combo(&c, &phi, 3, Exec::Sequential), Err(Error::ConstantAgainstNonVanishing));
    }

    #[test]
    fn monomial_table_is_complete() {
        let m = Monomials::new(3, 4);
        // monomials of degree < 4 in 3 variables: C(6, 3) = 20
        assert_eq!(m.exps.len(), 20);
        let w = [int(2), int(3), int(5)];
        for (e, p) in m.exps.iter().zip(m.powers(&w)) {
            let direct: Rat = e.iter().zip(&w).map(|(&k, x)| num_traits::pow(x.clone(), k as usize)).product();
            assert_eq!(p, direct);
        }
    }
}
