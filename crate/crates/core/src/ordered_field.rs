//! Rational functions in infinitesimals `e_0, ..., e_n` over Q, ordered so
//! that each `e_{i+1}` is positive but smaller than every power of `e_i`.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{sign_of, Exponent, MPoly, OrderedRing, Rat, Ring};

/// The infinitesimals an element may mention, by index, strictly increasing.
/// Slot `j` of the underlying polynomials is the variable `e_{indices[j]}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarSet {
    indices: Vec<usize>,
}

impl VarSet {
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Inconsistent(format!(
                "variable indices must be strictly increasing: {indices:?}"
            )));
        }
        Ok(VarSet { indices })
    }

    /// `{lo, lo + 1, ..., hi}`.
    pub fn range(lo: usize, hi: usize) -> Self {
        VarSet { indices: (lo..=hi).collect() }
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn slot_of(&self, var: usize) -> Option<usize> {
        self.indices.iter().position(|&v| v == var)
    }
}

/// Dominant term of a nonzero polynomial: the one whose exponent is smallest
/// when exponents are compared at their highest differing index.
pub fn leading_monomial(p: &MPoly) -> Result<(Exponent, Rat)> {
    p.leading_term().map(|(e, c)| (e.clone(), c.clone()))
}

/// A fraction `num / den` of polynomials in the variables of `vars`.
///
/// Fractions are not reduced to lowest terms. Equality and sign do not depend
/// on the representative.
#[derive(Clone)]
pub struct OrderedElem {
    vars: VarSet,
    num: MPoly,
    den: MPoly,
}

impl OrderedElem {
    pub fn new(vars: VarSet, num: MPoly, den: MPoly) -> Result<Self> {
        if num.nvars() != vars.len() || den.nvars() != vars.len() {
            return Err(Error::DimensionMismatch(format!(
                "polynomials over {}/{} slots for {} variables",
                num.nvars(),
                den.nvars(),
                vars.len()
            )));
        }
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(vars, num, den))
    }

    pub fn from_poly(vars: VarSet, p: MPoly) -> Self {
        let den = MPoly::one(vars.len());
        Self::new(vars, p, den).expect("polynomial over matching variables")
    }

    pub fn constant(vars: VarSet, c: Rat) -> Self {
        let p = MPoly::constant(vars.len(), c);
        Self::from_poly(vars, p)
    }

    /// The infinitesimal `e_var`.
    pub fn infinitesimal(vars: &VarSet, var: usize) -> Result<Self> {
        let slot = vars.slot_of(var).ok_or(Error::IndexOutOfRange {
            index: var,
            max: vars.indices().last().copied().unwrap_or(0),
        })?;
        Ok(Self::from_poly(vars.clone(), MPoly::var(vars.len(), slot)))
    }

    /// Clears integer content and makes the denominator's dominant coefficient positive.
    fn normalized(vars: VarSet, num: MPoly, den: MPoly) -> Self {
        let cn = num.content();
        let cd = den.content();
        let (_, lead) = den.leading_term().expect("nonzero denominator");
        let s = if sign_of(lead) < 0 { -Rat::one() } else { Rat::one() };
        let num = num.scale(&(&s / &cn));
        let den = den.scale(&(&s / &cd));
        // Put the content ratio back on the numerator.
        let num = num.scale(&(cn / cd));
        OrderedElem { vars, num, den }
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn same_vars(&self, other: &Self) {
        assert_eq!(self.vars, other.vars, "elements over different variable sets");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_vars(other);
        if self.den == other.den {
            return Self::normalized(self.vars.clone(), &self.num + &other.num, self.den.clone());
        }
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        Self::normalized(self.vars.clone(), num, &self.den * &other.den)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.same_vars(other);
        Self::normalized(self.vars.clone(), &self.num * &other.num, &self.den * &other.den)
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.same_vars(other);
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(
            self.vars.clone(),
            &self.num * &other.den,
            &self.den * &other.num,
        ))
    }

    pub fn neg(&self) -> Self {
        OrderedElem { vars: self.vars.clone(), num: -&self.num, den: self.den.clone() }
    }

    pub fn sign(&self) -> i8 {
        OrderedRing::sign(&self.num) * OrderedRing::sign(&self.den)
    }

    /// `sign(self - other)` as an ordering.
    pub fn compare(&self, other: &Self) -> Ordering {
        match self.sub(other).sign() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }

    /// The embedding that skips `e_i`: the j-th variable of `self` (whose
    /// variables must be `e_1..e_n`) becomes the j-th of `e_0, ..., ^e_i, ..., e_n`.
    pub fn iota(&self, i: usize) -> Result<Self> {
        let n = self.vars.len();
        if i > n {
            return Err(Error::IndexOutOfRange { index: i, max: n });
        }
        let target = VarSet::range(0, n);
        let slots: Vec<usize> = (0..=n).filter(|&k| k != i).collect();
        Ok(OrderedElem {
            vars: target,
            num: self.num.relabel(n + 1, &slots),
            den: self.den.relabel(n + 1, &slots),
        })
    }

    /// A polynomial with the same sign as `self`: `num * den`.
    pub fn sign_representative(&self) -> MPoly {
        &self.num * &self.den
    }
}

impl PartialEq for OrderedElem {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for OrderedElem {}

impl fmt::Debug for OrderedElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({}) over e{:?}", self.num, self.den, self.vars.indices())
    }
}

impl Ring for OrderedElem {
    fn zero_like(&self) -> Self {
        Self::constant(self.vars.clone(), Rat::zero())
    }
    fn one_like(&self) -> Self {
        Self::constant(self.vars.clone(), Rat::one())
    }
    fn vanishes(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.sub(rhs)
    }
    fn times(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn negated(&self) -> Self {
        self.neg()
    }
}

impl OrderedRing for OrderedElem {
    fn sign(&self) -> i8 {
        OrderedElem::sign(self)
    }
}

/// Vector over the ordered field.
pub type FVec = Vec<OrderedElem>;

/// Replaces a vector of fractions by a polynomial vector that is a POSITIVE
/// multiple of it, so sign-based invariants are unchanged.
pub fn clear_denominators(v: &[OrderedElem]) -> Vec<MPoly> {
    let Some(first) = v.first() else { return Vec::new() };
    let mut common = MPoly::one(first.vars.len());
    let mut seen: Vec<&MPoly> = Vec::new();
    for x in v {
        if !seen.contains(&&x.den) {
            seen.push(&x.den);
            common = &common * &x.den;
        }
    }
    // The common denominator is a product of denominators normalized to a
    // positive dominant coefficient, hence positive.
    v.iter()
        .map(|x| {
            if x.den == common {
                x.num.clone()
            } else {
                // common / den is exact because den is one of the factors.
                let rest = seen
                    .iter()
                    .filter(|d| ***d != x.den)
                    .fold(MPoly::one(x.vars.len()), |acc, d| &acc * *d);
                &x.num * &rest
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};
    use proptest::prelude::*;

    fn vars12() -> VarSet {
        VarSet::range(1, 2)
    }

    fn eps(vars: &VarSet, i: usize) -> OrderedElem {
        OrderedElem::infinitesimal(vars, i).unwrap()
    }

    fn c(vars: &VarSet, q: Rat) -> OrderedElem {
        OrderedElem::constant(vars.clone(), q)
    }

    #[test]
    fn constant_term_dominates_infinitesimal() {
        let p = MPoly::from_terms(1, [(vec![0], int(1)), (vec![1], int(-1))]);
        assert_eq!(leading_monomial(&p).unwrap(), (Exponent(vec![0]), int(1)));
    }

    #[test]
    fn any_power_of_earlier_variable_dominates_later_variable() {
        let p = MPoly::from_terms(2, [(vec![5, 0], int(1)), (vec![0, 1], int(-1))]);
        assert_eq!(leading_monomial(&p).unwrap(), (Exponent(vec![5, 0]), int(1)));
        let q = MPoly::from_terms(2, [(vec![1, 1], int(3))]);
        assert_eq!(leading_monomial(&q).unwrap(), (Exponent(vec![1, 1]), int(3)));
        assert_eq!(leading_monomial(&MPoly::zero(2)), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn signs_of_worked_elements() {
        let v = vars12();
        let (e1, e2) = (eps(&v, 1), eps(&v, 2));
        assert_eq!(e2.sub(&e1).sign(), -1);
        let one = c(&v, int(1));
        let q = one.sub(&e1).div(&one.add(&e1)).unwrap();
        assert_eq!(q.sign(), 1);
        assert_eq!(c(&v, int(0)).sign(), 0);
        assert_eq!(e1.compare(&one), Ordering::Less);
        let mut power = one.clone();
        for _ in 1..=5 {
            power = power.mul(&e1);
            assert_eq!(e2.compare(&power), Ordering::Less);
        }
        assert!(e1.add(&e1.neg()).is_zero());
        assert_eq!(one.div(&c(&v, int(0))).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn iota_renames_slots() {
        let v = VarSet::range(1, 2);
        let e1 = eps(&v, 1);
        let target = VarSet::range(0, 2);
        // Removing e_0 leaves names unchanged.
        assert_eq!(e1.iota(0).unwrap(), eps(&target, 1));
        // Removing e_1 sends the first variable to e_0.
        assert_eq!(e1.iota(1).unwrap(), eps(&target, 0));
        assert_eq!(e1.iota(2).unwrap(), eps(&target, 0));
        assert_eq!(eps(&v, 2).iota(2).unwrap(), eps(&target, 1));
        assert!(e1.iota(3).is_err());
    }

    #[test]
    fn clearing_denominators_keeps_signs() {
        let v = vars12();
        let (e1, e2) = (eps(&v, 1), eps(&v, 2));
        let x = c(&v, int(1)).div(&e2.sub(&e1)).unwrap();
        let y = e1.div(&c(&v, rat(-1, 3)).add(&e2)).unwrap();
        let polys = clear_denominators(&[x.clone(), y.clone()]);
        assert_eq!(OrderedRing::sign(&polys[0]), x.sign());
        assert_eq!(OrderedRing::sign(&polys[1]), y.sign());
    }

    // Random elements over e_1, e_2, e_3 with small integer coefficients.
    fn arb_poly() -> impl Strategy<Value = MPoly> {
        proptest::collection::vec(((0u32..3, 0u32..3, 0u32..3), -4i64..=4), 1..5).prop_map(
            |terms| MPoly::from_terms(3, terms.into_iter().map(|((a, b, c), k)| (vec![a, b, c], int(k)))),
        )
    }

    fn arb_elem() -> impl Strategy<Value = OrderedElem> {
        (arb_poly(), arb_poly().prop_filter("nonzero", |p| !p.is_zero()))
            .prop_map(|(n, d)| OrderedElem::new(VarSet::range(1, 3), n, d).unwrap())
    }

    proptest! {
        #[test]
        fn trichotomy_and_transitivity(x in arb_elem(), y in arb_elem(), z in arb_elem()) {
            let xy = x.compare(&y);
            prop_assert_eq!(xy, y.compare(&x).reverse());
            if xy == Ordering::Less && y.compare(&z) == Ordering::Less {
                prop_assert_eq!(x.compare(&z), Ordering::Less);
            }
        }

        #[test]
        fn order_respects_arithmetic(x in arb_elem(), y in arb_elem(), z in arb_elem()) {
            if x.compare(&y) == Ordering::Greater {
                prop_assert_eq!(x.add(&z).compare(&y.add(&z)), Ordering::Greater);
                if z.sign() > 0 {
                    prop_assert_eq!(x.mul(&z).compare(&y.mul(&z)), Ordering::Greater);
                }
            }
        }

        #[test]
        fn sign_is_representation_independent(x in arb_elem(), d in arb_poly()) {
            prop_assume!(!d.is_zero());
            let scaled = OrderedElem::new(x.vars().clone(), x.num() * &d, x.den() * &d).unwrap();
            prop_assert_eq!(scaled.sign(), x.sign());
            prop_assert_eq!(scaled, x);
        }

        #[test]
        fn iota_is_an_order_preserving_homomorphism(x in arb_elem(), y in arb_elem(), i in 0usize..=3) {
            let (ix, iy) = (x.iota(i).unwrap(), y.iota(i).unwrap());
            prop_assert_eq!(ix.sign(), x.sign());
            prop_assert_eq!(x.add(&y).iota(i).unwrap(), ix.add(&iy));
            prop_assert_eq!(x.mul(&y).iota(i).unwrap(), ix.mul(&iy));
        }
    }
}
