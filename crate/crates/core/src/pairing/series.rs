use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::rat::{factorial, fmt_vec};
use crate::exactnum::{bernoulli_numbers, CoeffElem, CoeffRing, Rat, Ring};

/// A power series in `nvars` variables over a [`CoeffRing`], known exactly in
/// every total degree below `prec` and unknown from `prec` on.
#[derive(Clone, PartialEq, Eq)]
pub struct Series {
    nvars: usize,
    prec: u32,
    ring: CoeffRing,
    terms: BTreeMap<Vec<u32>, CoeffElem>,
}

fn degree(e: &[u32]) -> u32 {
    e.iter().sum()
}

impl Series {
    pub fn zero(ring: &CoeffRing, nvars: usize, prec: u32) -> Self {
        Series { nvars, prec, ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ring: &CoeffRing, nvars: usize, prec: u32) -> Self {
        Self::constant(ring.one(), nvars, prec)
    }

    pub fn constant(c: CoeffElem, nvars: usize, prec: u32) -> Self {
        let mut s = Self::zero(c.ring(), nvars, prec);
        s.add_term(vec![0; nvars], c);
        s
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Degrees `< prec` are exact.
    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn ring(&self) -> &CoeffRing {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &CoeffElem)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest total degree carrying a nonzero coefficient.
    pub fn valuation(&self) -> Option<u32> {
        self.terms.keys().map(|e| degree(e)).min()
    }

    pub fn coeff(&self, e: &[u32]) -> Result<CoeffElem> {
        if degree(e) >= self.prec {
            return Err(Error::TruncationTooSmall { have: self.prec, need: degree(e) + 1 });
        }
        Ok(self.terms.get(e).cloned().unwrap_or_else(|| self.ring.zero()))
    }

    pub fn add_term(&mut self, e: Vec<u32>, c: CoeffElem) {
        assert_eq!(e.len(), self.nvars);
        if degree(&e) >= self.prec || c.vanishes() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v = v.plus(&c);
                if v.vanishes() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    /// Lowers the precision, dropping terms that are no longer tracked.
    pub fn truncate(&self, prec: u32) -> Series {
        let prec = prec.min(self.prec);
        Series {
            nvars: self.nvars,
            prec,
            ring: self.ring.clone(),
            terms: self.terms.iter().filter(|(e, _)| degree(e) < prec).map(|(e, c)| (e.clone(), c.clone())).collect(),
        }
    }

    /// Homogeneous part of total degree `d`.
    pub fn component(&self, d: u32) -> Result<Series> {
        if d >= self.prec {
            return Err(Error::TruncationTooSmall { have: self.prec, need: d + 1 });
        }
        Ok(Series {
            nvars: self.nvars,
            prec: self.prec,
            ring: self.ring.clone(),
            terms: self.terms.iter().filter(|(e, _)| degree(e) == d).map(|(e, c)| (e.clone(), c.clone())).collect(),
        })
    }

    fn check(&self, other: &Series) {
        assert_eq!(self.nvars, other.nvars, "series in different numbers of variables");
        assert!(self.ring == other.ring, "series over {:?} and {:?}", self.ring, other.ring);
    }

    pub fn add(&self, other: &Series) -> Series {
        self.check(other);
        let mut out = self.truncate(self.prec.min(other.prec));
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Series) -> Series {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Series {
        Series {
            nvars: self.nvars,
            prec: self.prec,
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.negated())).collect(),
        }
    }

    /// Product; the result is exact below `min(prec_a + val_b, prec_b + val_a)`.
    pub fn mul(&self, other: &Series) -> Series {
        self.check(other);
        let va = self.valuation().unwrap_or(self.prec);
        let vb = other.valuation().unwrap_or(other.prec);
        let prec = (self.prec + vb).min(other.prec + va);
        let mut out = Series::zero(&self.ring, self.nvars, prec);
        for (ea, ca) in &self.terms {
            let da = degree(ea);
            for (eb, cb) in &other.terms {
                if da + degree(eb) >= prec {
                    continue;
                }
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca.times(cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &CoeffElem) -> Series {
        let mut out = Series::zero(&self.ring, self.nvars, self.prec);
        for (e, x) in &self.terms {
            out.add_term(e.clone(), x.times(c));
        }
        out
    }

    pub fn scale_rat(&self, q: &Rat) -> Series {
        let mut out = Series::zero(&self.ring, self.nvars, self.prec);
        if q.is_zero() {
            return out;
        }
        for (e, x) in &self.terms {
            out.add_term(e.clone(), x.scale(q));
        }
        out
    }

    /// Exact polynomial `(form . z)` as a series.
    pub fn linear(ring: &CoeffRing, form: &[Rat], prec: u32) -> Series {
        let n = form.len();
        let mut s = Series::zero(ring, n, prec);
        for (i, a) in form.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            s.add_term(e, ring.from_rat(a.clone()));
        }
        s
    }

    /// `(form . z)^0, ..., (form . z)^(prec-1)`, each exact.
    fn linear_powers(ring: &CoeffRing, form: &[Rat], prec: u32) -> Vec<Series> {
        let lin = Series::linear(ring, form, prec);
        let mut out = Vec::with_capacity(prec as usize);
        let mut p = Series::one(ring, form.len(), prec);
        for _ in 0..prec {
            out.push(p.clone());
            p = p.mul(&lin);
            p.prec = prec;
        }
        out
    }

    /// `sum_k a_k (form . z)^k` for the given rational coefficients.
    pub fn of_linear(ring: &CoeffRing, form: &[Rat], coeffs: &[Rat], prec: u32) -> Series {
        let powers = Series::linear_powers(ring, form, prec);
        let mut out = Series::zero(ring, form.len(), prec);
        for (k, p) in powers.iter().enumerate() {
            if let Some(a) = coeffs.get(k) {
                if !a.is_zero() {
                    out = out.add(&p.scale_rat(a));
                }
            }
        }
        out
    }

    /// `exp(form . z)`.
    pub fn exp_linear(ring: &CoeffRing, form: &[Rat], prec: u32) -> Series {
        let coeffs: Vec<Rat> =
            (0..prec).map(|k| Rat::new(BigInt::one(), factorial(k))).collect();
        Series::of_linear(ring, form, &coeffs, prec)
    }

    /// `t / (e^t - 1)` at `t = form . z`, i.e. `sum B_m t^m / m!`.
    pub fn bernoulli_linear(ring: &CoeffRing, form: &[Rat], prec: u32) -> Series {
        let bs = bernoulli_numbers(prec.max(1) - 1);
        let coeffs: Vec<Rat> = bs
            .iter()
            .enumerate()
            .map(|(m, b)| b / Rat::from_integer(factorial(m as u32)))
            .collect();
        Series::of_linear(ring, form, &coeffs, prec)
    }

    /// Substitutes `z_j = sum_i t[j][i] u_i` (an `nvars x m` table of ring
    /// elements) giving a series in the `m` new variables `u`.
    pub fn substitute_linear(&self, t: &[Vec<CoeffElem>]) -> Result<Series> {
        if t.len() != self.nvars {
            return Err(Error::DimensionMismatch(format!(
                "substitution for {} variables given {} rows",
                self.nvars,
                t.len()
            )));
        }
        let m = t.first().map_or(0, Vec::len);
        let ring = t
            .iter()
            .flatten()
            .next()
            .map(|c| c.ring().clone())
            .unwrap_or_else(|| self.ring.clone());
        let lift = |c: &CoeffElem| c.lift(&ring);
        // Powers of each substituted variable.
        let mut powers: Vec<Vec<Series>> = Vec::with_capacity(self.nvars);
        for row in t {
            let mut lin = Series::zero(&ring, m, self.prec);
            for (i, c) in row.iter().enumerate() {
                let mut e = vec![0; m];
                e[i] = 1;
                lin.add_term(e, c.clone());
            }
            let mut ps = vec![Series::one(&ring, m, self.prec)];
            for k in 1..self.prec {
                let mut next = ps[k as usize - 1].mul(&lin);
                next.prec = self.prec;
                ps.push(next);
            }
            powers.push(ps);
        }
        let mut out = Series::zero(&ring, m, self.prec);
        for (e, c) in &self.terms {
            let mut term = Series::constant(lift(c)?, m, self.prec);
            for (j, &k) in e.iter().enumerate() {
                term = term.mul(&powers[j][k as usize]);
                term.prec = self.prec;
            }
            out = out.add(&term);
        }
        Ok(out)
    }

    /// Maps every coefficient into a larger ring.
    pub fn lift(&self, ring: &CoeffRing) -> Result<Series> {
        let mut out = Series::zero(ring, self.nvars, self.prec);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.lift(ring)?);
        }
        Ok(out)
    }

    /// Exact quotient by the linear form `form . z`, one degree at a time.
    /// The result is exact one degree lower than `self`.
    pub fn div_linear(&self, form: &[Rat]) -> Result<Series> {
        let Some(j) = form.iter().position(|x| !x.is_zero()) else {
            return Err(Error::ZeroForm(fmt_vec(form)));
        };
        // The pivot is the LAST variable with a nonzero coefficient; ordering
        // monomials by that variable's exponent makes each step strictly
        // decrease it.
        let j = form.iter().rposition(|x| !x.is_zero()).unwrap_or(j);
        let lead = form[j].clone();
        let prec = self.prec.saturating_sub(1);
        let mut rem = self.clone();
        let mut quot = Series::zero(&self.ring, self.nvars, prec);
        loop {
            // Highest exponent of z_j among the remaining terms.
            let pick = rem
                .terms
                .iter()
                .max_by(|(a, _), (b, _)| a[j].cmp(&b[j]).then_with(|| b.cmp(a)))
                .map(|(e, c)| (e.clone(), c.clone()));
            let Some((e, c)) = pick else { break };
            if e[j] == 0 {
                return Err(Error::NotDivisible { form: fmt_vec(form), degree: degree(&e) });
            }
            let mut qe = e.clone();
            qe[j] -= 1;
            let qc = c.scale(&(Rat::one() / &lead));
            // rem -= qc * z^qe * form
            for (i, a) in form.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let mut te = qe.clone();
                te[i] += 1;
                rem.add_term(te, qc.scale(a).negated());
            }
            quot.add_term(qe, qc);
        }
        Ok(quot)
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| format!("({c})*z^{e:?}"))
            .collect();
        write!(f, "{} + O(deg {})", if parts.is_empty() { "0".to_string() } else { parts.join(" + ") }, self.prec)
    }
}
