use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rat::{fmt_rat, sign_of, Rat};
use super::ring::{OrderedRing, Ring};
use crate::error::{Error, Result};

/// Exponent vector of a monomial.
///
/// The ordering is the one that makes iterated Laurent series
/// `R((e_1))...((e_n))` an ordered field: two vectors are compared at the
/// HIGHEST index where they differ, and the one smaller there is smaller.
/// The smallest exponent of a polynomial is its dominant (leading) term.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Exponent(pub Vec<u32>);

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.0.len(), other.0.len());
        for (a, b) in self.0.iter().rev().zip(other.0.iter().rev()) {
            match a.cmp(b) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Exponent {
    pub fn zero(nvars: usize) -> Self {
        Exponent(vec![0; nvars])
    }

    pub fn unit(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Exponent(e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn plus(&self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

/// Sparse polynomial over Q in a fixed number of variables. No zero
/// coefficients are ever stored.
#[derive(Clone, PartialEq, Eq)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Exponent, Rat>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rat::one())
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        Self::monomial(nvars, Exponent::zero(nvars), c)
    }

    /// The variable in slot `i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable slot {i} out of range for {nvars} variables");
        Self::monomial(nvars, Exponent::unit(nvars, i), Rat::one())
    }

    pub fn monomial(nvars: usize, e: Exponent, c: Rat) -> Self {
        assert_eq!(e.0.len(), nvars);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        MPoly { nvars, terms }
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Rat)>) -> Self {
        let mut p = MPoly::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars);
            p.add_term(Exponent(e), c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing exponent order, i.e. dominant term first.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &Exponent) -> Rat {
        self.terms.get(e).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Exponent::total_degree).max().unwrap_or(0)
    }

    fn add_term(&mut self, e: Exponent, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    fn check_compatible(&self, other: &MPoly) {
        assert_eq!(
            self.nvars, other.nvars,
            "polynomials over different variable counts"
        );
    }

    /// The term with the smallest exponent under [`Exponent`]'s order.
    pub fn leading_term(&self) -> Result<(&Exponent, &Rat)> {
        self.terms.iter().next().ok_or(Error::ZeroPolynomial)
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn exact_div_scalar(&self, c: &Rat) -> Result<MPoly> {
        if c.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.scale(&(Rat::one() / c)))
    }

    /// Positive rational `g` such that `self / g` has coprime integer coefficients.
    pub fn content(&self) -> Rat {
        if self.is_zero() {
            return Rat::one();
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        Rat::new(num_gcd.abs(), den_lcm)
    }

    /// Inserts a new variable (appearing to degree 0) at slot `pos`.
    pub fn insert_var(&self, pos: usize) -> MPoly {
        assert!(pos <= self.nvars);
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut v = e.0.clone();
                v.insert(pos, 0);
                (Exponent(v), c.clone())
            })
            .collect();
        MPoly { nvars: self.nvars + 1, terms }
    }

    /// Re-embeds into `nvars` variables, sending slot `j` to `slots[j]`.
    pub fn relabel(&self, nvars: usize, slots: &[usize]) -> MPoly {
        assert_eq!(slots.len(), self.nvars);
        let mut out = MPoly::zero(nvars);
        for (e, c) in &self.terms {
            let mut v = vec![0; nvars];
            for (j, &k) in e.0.iter().enumerate() {
                v[slots[j]] += k;
            }
            out.add_term(Exponent(v), c.clone());
        }
        out
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(&e.0) {
                for _ in 0..k {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    pub fn pow(&self, k: u32) -> MPoly {
        let mut acc = MPoly::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", fmt_rat(c))?;
            for (i, &k) in e.0.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "*e{i}")?,
                    _ => write!(f, "*e{i}^{k}")?,
                }
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn add(self, rhs: &'a MPoly) -> MPoly {
        self.check_compatible(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &'a MPoly) -> MPoly {
        self.check_compatible(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &'a MPoly) -> MPoly {
        self.check_compatible(rhs);
        let mut out = MPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea.plus(eb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Ring for MPoly {
    fn zero_like(&self) -> Self {
        MPoly::zero(self.nvars)
    }
    fn one_like(&self) -> Self {
        MPoly::one(self.nvars)
    }
    fn vanishes(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
}

/// Polynomials in infinitesimals are ordered by the sign of their dominant term.
impl OrderedRing for MPoly {
    fn sign(&self) -> i8 {
        self.leading_term().map(|(_, c)| sign_of(c)).unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat::int;

    fn e(nv: usize, i: usize) -> MPoly {
        MPoly::var(nv, i)
    }

    #[test]
    fn difference_of_squares() {
        let x = e(1, 0);
        let one = MPoly::one(1);
        let p = &(&x + &one) * &(&x - &one);
        let expected = &x.pow(2) - &one;
        assert_eq!(p, expected);
    }

    #[test]
    fn adding_zero_and_monomial_products() {
        let p = &e(2, 0) + &MPoly::constant(2, int(3));
        assert_eq!(&p + &MPoly::zero(2), p);
        let q = &(&e(2, 0) * &e(2, 1)) * &e(2, 1);
        assert_eq!(q, MPoly::from_terms(2, [(vec![1, 2], int(1))]));
    }

    #[test]
    fn division_by_zero_scalar_fails() {
        assert_eq!(e(1, 0).exact_div_scalar(&int(0)), Err(Error::DivisionByZero));
        assert_eq!(
            e(1, 0).scale(&int(4)).exact_div_scalar(&int(2)).unwrap(),
            e(1, 0).scale(&int(2))
        );
    }

    #[test]
    fn no_zero_terms_after_cancellation() {
        let p = &e(2, 0) - &e(2, 0);
        assert!(p.is_zero());
        assert_eq!(p.len(), 0);
    }

    #[test]
    fn exponent_order_compares_highest_index_first() {
        // e1^5 precedes e2: at index 2 the exponents are 0 < 1.
        assert!(Exponent(vec![5, 0]) < Exponent(vec![0, 1]));
        assert!(Exponent(vec![0, 0]) < Exponent(vec![1, 0]));
        assert!(Exponent(vec![3, 1]) < Exponent(vec![0, 2]));
    }
}
