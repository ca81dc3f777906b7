use std::collections::BTreeMap;

use num_traits::One;
use serde::{Deserialize, Serialize};

use super::schwartz::CoeffDoc;
use super::series::Series;
use crate::error::{Error, Result};
use crate::exactnum::rat::{fmt_vec, is_zero_vec, primitive_up_to_sign};
use crate::exactnum::{CoeffElem, CoeffRing, Rat, RatStr};

/// `numerator / prod(forms)`, a formal Laurent-type series whose poles lie on
/// the given linear forms. Forms are stored as primitive integer vectors
/// with positive leading entry, each with a multiplicity. The numerator is
/// exact below `dmax + 1 + (total multiplicity)`, which makes every represented
/// homogeneous component of degree at most `dmax` exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotSeries {
    dmax: u32,
    denoms: BTreeMap<Vec<Rat>, u32>,
    num: Series,
}

impl QuotSeries {
    /// `num / prod(forms)`; forms need not be primitive. The numerator must be
    /// exact below `dmax + 1 + forms.len()`.
    pub fn new(num: Series, forms: &[Vec<Rat>], dmax: u32) -> Result<Self> {
        let mut denoms = BTreeMap::new();
        let mut scale = Rat::one();
        for f in forms {
            if f.len() != num.nvars() {
                return Err(Error::DimensionMismatch(format!(
                    "form {} for a series in {} variables",
                    fmt_vec(f),
                    num.nvars()
                )));
            }
            if is_zero_vec(f) {
                return Err(Error::ZeroForm(fmt_vec(f)));
            }
            let (p, c) = primitive_up_to_sign(f);
            scale *= c;
            *denoms.entry(p).or_insert(0) += 1;
        }
        let need = dmax + 1 + forms.len() as u32;
        if num.prec() < need {
            return Err(Error::TruncationTooSmall { have: num.prec(), need });
        }
        let num = num.truncate(need).scale_rat(&(Rat::one() / scale));
        Ok(QuotSeries { dmax, denoms, num })
    }

    /// A power series viewed as a quotient with no denominator.
    pub fn from_series(s: Series, dmax: u32) -> Result<Self> {
        QuotSeries::new(s, &[], dmax)
    }

    pub fn zero(ring: &CoeffRing, nvars: usize, dmax: u32) -> Self {
        QuotSeries { dmax, denoms: BTreeMap::new(), num: Series::zero(ring, nvars, dmax + 1) }
    }

    pub fn dmax(&self) -> u32 {
        self.dmax
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn ring(&self) -> &CoeffRing {
        self.num.ring()
    }

    pub fn numerator(&self) -> &Series {
        &self.num
    }

    pub fn denominators(&self) -> &BTreeMap<Vec<Rat>, u32> {
        &self.denoms
    }

    /// Total multiplicity of the denominator.
    pub fn pole_order(&self) -> u32 {
        self.denoms.values().sum()
    }

    /// Multiplies numerator and denominator by the forms needed to reach `target`.
    fn expand_to(&self, target: &BTreeMap<Vec<Rat>, u32>, dmax: u32) -> Series {
        let mut num = self.num.truncate(dmax + 1 + self.pole_order());
        for (form, &m) in target {
            let have = self.denoms.get(form).copied().unwrap_or(0);
            for _ in have..m {
                let lin = Series::linear(self.ring(), form, num.prec() + 1);
                num = num.mul(&lin);
            }
        }
        num
    }

    fn common(&self, other: &QuotSeries) -> (BTreeMap<Vec<Rat>, u32>, u32) {
        let mut target = self.denoms.clone();
        for (f, &m) in &other.denoms {
            let e = target.entry(f.clone()).or_insert(0);
            *e = (*e).max(m);
        }
        (target, self.dmax.min(other.dmax))
    }

    pub fn add(&self, other: &QuotSeries) -> Result<QuotSeries> {
        if self.nvars() != other.nvars() {
            return Err(Error::DimensionMismatch(format!(
                "quotients in {} and {} variables",
                self.nvars(),
                other.nvars()
            )));
        }
        if self.ring() != other.ring() {
            let ring = self.ring().join(other.ring())?;
            return self.lift(&ring)?.add(&other.lift(&ring)?);
        }
        let (target, dmax) = self.common(other);
        let a = self.expand_to(&target, dmax);
        let b = other.expand_to(&target, dmax);
        Ok(QuotSeries { dmax, denoms: target, num: a.add(&b) })
    }

    pub fn neg(&self) -> QuotSeries {
        QuotSeries { dmax: self.dmax, denoms: self.denoms.clone(), num: self.num.neg() }
    }

    pub fn sub(&self, other: &QuotSeries) -> Result<QuotSeries> {
        self.add(&other.neg())
    }

    pub fn scale_rat(&self, q: &Rat) -> QuotSeries {
        QuotSeries { dmax: self.dmax, denoms: self.denoms.clone(), num: self.num.scale_rat(q) }
    }

    pub fn scale(&self, c: &CoeffElem) -> Result<QuotSeries> {
        let ring = self.ring().join(c.ring())?;
        let me = self.lift(&ring)?;
        Ok(QuotSeries { dmax: me.dmax, denoms: me.denoms, num: me.num.scale(&c.lift(&ring)?) })
    }

    pub fn lift(&self, ring: &CoeffRing) -> Result<QuotSeries> {
        Ok(QuotSeries { dmax: self.dmax, denoms: self.denoms.clone(), num: self.num.lift(ring)? })
    }

    /// Multiplies by a power series, keeping the degree bound.
    pub fn mul_series(&self, s: &Series) -> Result<QuotSeries> {
        let need = self.dmax + 1 + self.pole_order();
        let num = self.num.mul(s);
        if num.prec() < need {
            return Err(Error::TruncationTooSmall { have: num.prec(), need });
        }
        Ok(QuotSeries { dmax: self.dmax, denoms: self.denoms.clone(), num: num.truncate(need) })
    }

    /// Whether the represented expansion vanishes through degree `dmax`.
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Equality of the represented expansions through the smaller `dmax`.
    pub fn laurent_eq(&self, other: &QuotSeries) -> Result<bool> {
        Ok(self.sub(other)?.is_zero())
    }

    /// Divides out every denominator form. Fails with `NotDivisible` when a
    /// pole survives.
    pub fn reduce_to_power_series(&self) -> Result<Series> {
        let mut s = self.num.clone();
        for (form, &m) in &self.denoms {
            for _ in 0..m {
                s = s.div_linear(form)?;
            }
        }
        Ok(s)
    }

    /// In one variable: the coefficient of `z^k` of the Laurent expansion.
    pub fn laurent_coeff_1d(&self, k: i64) -> Result<CoeffElem> {
        if self.nvars() != 1 {
            return Err(Error::DimensionMismatch(format!(
                "one-variable Laurent coefficient of a series in {} variables",
                self.nvars()
            )));
        }
        let order = i64::from(self.pole_order());
        if k > i64::from(self.dmax) {
            return Err(Error::TruncationTooSmall { have: self.dmax + 1, need: (k + 1) as u32 });
        }
        // The only primitive form in one variable is z itself.
        let e = k + order;
        if e < 0 {
            return Ok(self.ring().zero());
        }
        self.num.coeff(&[e as u32])
    }

    pub fn to_doc(&self) -> QuotSeriesDoc {
        QuotSeriesDoc {
            dmax: self.dmax,
            denoms: self
                .denoms
                .iter()
                .map(|(f, &m)| DenomDoc { form: f.iter().cloned().map(RatStr).collect(), mult: m })
                .collect(),
            coeffs: self
                .num
                .terms()
                .map(|(e, c)| TermDoc { deg: e.clone(), value: CoeffDoc::of(c) })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DenomDoc {
    pub form: Vec<RatStr>,
    pub mult: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    pub deg: Vec<u32>,
    pub value: CoeffDoc,
}

/// JSON dump of a quotient: numerator terms over the listed forms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotSeriesDoc {
    #[serde(rename = "Dmax")]
    pub dmax: u32,
    pub denoms: Vec<DenomDoc>,
    pub coeffs: Vec<TermDoc>,
}

impl Serialize for QuotSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_doc().serialize(s)
    }
}
