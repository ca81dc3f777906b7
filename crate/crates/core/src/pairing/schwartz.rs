use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::rat::fmt_vec;
use crate::exactnum::{CoeffElem, CoeffRing, Rat, RatStr, Ring};

/// A locally constant function with compact support on the finite adeles,
/// given by its values on `(1/d)Z^n`, which are invariant under `f Z^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchwartzFn {
    n: usize,
    d: u64,
    f: u64,
    ring: CoeffRing,
    /// Keys are `d * w mod d f`, componentwise in `0..d f`.
    table: BTreeMap<Vec<u64>, CoeffElem>,
}

impl SchwartzFn {
    pub fn new(n: usize, d: u64, f: u64, ring: &CoeffRing) -> Result<Self> {
        if n == 0 || d == 0 || f == 0 {
            return Err(Error::InvalidSchwartz(format!("need n, d, f >= 1, got n={n} d={d} f={f}")));
        }
        Ok(SchwartzFn { n, d, f, ring: ring.clone(), table: BTreeMap::new() })
    }

    /// Builds the table by calling `value` on every class (in units of 1/d).
    pub fn from_fn<F>(n: usize, d: u64, f: u64, ring: &CoeffRing, value: F) -> Result<Self>
    where
        F: Fn(&[u64]) -> CoeffElem,
    {
        let mut s = SchwartzFn::new(n, d, f, ring)?;
        let m = d * f;
        let total = m.checked_pow(n as u32).ok_or_else(|| {
            Error::InvalidSchwartz(format!("{m}^{n} residue classes is too many"))
        })?;
        let mut class = vec![0u64; n];
        for _ in 0..total {
            s.set(&class, value(&class))?;
            for c in class.iter_mut() {
                *c += 1;
                if *c < m {
                    break;
                }
                *c = 0;
            }
        }
        Ok(s)
    }

    /// The characteristic function of `Z^n` hat: 1 on every integer point.
    pub fn lattice_indicator(n: usize, ring: &CoeffRing) -> Self {
        let mut s = SchwartzFn::new(n, 1, 1, ring).expect("valid shape");
        s.table.insert(vec![0; n], ring.one());
        s
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn support_denominator(&self) -> u64 {
        self.d
    }

    pub fn period(&self) -> u64 {
        self.f
    }

    pub fn ring(&self) -> &CoeffRing {
        &self.ring
    }

    pub fn table(&self) -> &BTreeMap<Vec<u64>, CoeffElem> {
        &self.table
    }

    pub fn set(&mut self, class: &[u64], value: CoeffElem) -> Result<()> {
        let m = self.d * self.f;
        if class.len() != self.n || class.iter().any(|&c| c >= m) {
            return Err(Error::InvalidSchwartz(format!(
                "class {class:?} is not a residue in (0..{m})^{}",
                self.n
            )));
        }
        let value = value.lift(&self.ring)?;
        if value.vanishes() {
            self.table.remove(class);
        } else {
            self.table.insert(class.to_vec(), value);
        }
        Ok(())
    }

    /// Residue class of `w`, or `None` off the support lattice.
    pub fn class_of(&self, w: &[Rat]) -> Option<Vec<u64>> {
        let m = BigInt::from(self.d * self.f);
        w.iter()
            .map(|x| {
                let y = x * Rat::from_integer(BigInt::from(self.d));
                if !y.is_integer() {
                    return None;
                }
                y.to_integer().mod_floor(&m).to_u64()
            })
            .collect()
    }

    pub fn eval(&self, w: &[Rat]) -> Result<CoeffElem> {
        if w.len() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "point {} against a function on Q^{}",
                fmt_vec(w),
                self.n
            )));
        }
        Ok(self
            .class_of(w)
            .and_then(|c| self.table.get(&c).cloned())
            .unwrap_or_else(|| self.ring.zero()))
    }

    /// Value at the class of 0.
    pub fn value_at_zero(&self) -> CoeffElem {
        self.table.get(&vec![0; self.n]).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn vanishes_near_zero(&self) -> bool {
        self.value_at_zero().vanishes()
    }

    /// Re-expresses the function with a finer support lattice and coarser
    /// period (`d` and `f` must divide the new values).
    pub fn refine(&self, d: u64, f: u64) -> Result<SchwartzFn> {
        if !d.is_multiple_of(self.d) || !f.is_multiple_of(self.f) {
            return Err(Error::InvalidSchwartz(format!(
                "cannot refine (d={}, f={}) to (d={d}, f={f})",
                self.d, self.f
            )));
        }
        SchwartzFn::from_fn(self.n, d, f, &self.ring, |class| {
            let w: Vec<Rat> =
                class.iter().map(|&c| Rat::new(BigInt::from(c), BigInt::from(d))).collect();
            self.eval(&w).expect("dimension matches")
        })
    }

    fn common_shape(&self, other: &SchwartzFn) -> Result<(SchwartzFn, SchwartzFn)> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!(
                "functions on Q^{} and Q^{}",
                self.n, other.n
            )));
        }
        let d = self.d.lcm(&other.d);
        let f = self.f.lcm(&other.f);
        let ring = self.ring.join(&other.ring)?;
        let mut a = self.refine(d, f)?;
        let mut b = other.refine(d, f)?;
        a.lift_ring(&ring)?;
        b.lift_ring(&ring)?;
        Ok((a, b))
    }

    fn lift_ring(&mut self, ring: &CoeffRing) -> Result<()> {
        for v in self.table.values_mut() {
            *v = v.lift(ring)?;
        }
        self.ring = ring.clone();
        Ok(())
    }

    pub fn add(&self, other: &SchwartzFn) -> Result<SchwartzFn> {
        let (mut a, b) = self.common_shape(other)?;
        for (k, v) in b.table {
            let sum = a.table.get(&k).map_or(v.clone(), |x| x.plus(&v));
            a.set(&k, sum)?;
        }
        Ok(a)
    }

    pub fn scale(&self, c: &CoeffElem) -> Result<SchwartzFn> {
        let ring = self.ring.join(c.ring())?;
        let c = c.lift(&ring)?;
        let mut out = self.clone();
        out.lift_ring(&ring)?;
        let keys: Vec<Vec<u64>> = out.table.keys().cloned().collect();
        for k in keys {
            let v = out.table[&k].times(&c);
            out.set(&k, v)?;
        }
        Ok(out)
    }

    pub fn to_doc(&self) -> SchwartzDoc {
        SchwartzDoc {
            n: self.n,
            d: self.d,
            f: self.f,
            ring: RingDoc::of(&self.ring),
            values: self
                .table
                .iter()
                .map(|(k, v)| ClassValueDoc { class: k.iter().map(|&c| c as i64).collect(), value: CoeffDoc::of(v) })
                .collect(),
        }
    }

    pub fn from_doc(doc: &SchwartzDoc) -> Result<SchwartzFn> {
        let ring = doc.ring.to_ring()?;
        let mut s = SchwartzFn::new(doc.n, doc.d, doc.f, &ring)?;
        let m = (doc.d * doc.f) as i64;
        for cv in &doc.values {
            if cv.class.len() != doc.n {
                return Err(Error::InvalidSchwartz(format!("class {:?} has the wrong length", cv.class)));
            }
            let class: Vec<u64> = cv.class.iter().map(|&c| c.rem_euclid(m) as u64).collect();
            s.set(&class, cv.value.to_elem(&ring)?)?;
        }
        Ok(s)
    }
}

/// Coefficient ring `Q(zeta_m, sqrt D)` as JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingDoc {
    #[serde(default = "one_u32")]
    pub m: u32,
    #[serde(default, rename = "D", skip_serializing_if = "Option::is_none")]
    pub d: Option<i64>,
}

fn one_u32() -> u32 {
    1
}

impl Default for RingDoc {
    fn default() -> Self {
        RingDoc { m: 1, d: None }
    }
}

impl RingDoc {
    pub fn of(r: &CoeffRing) -> Self {
        RingDoc { m: r.order(), d: r.radicand() }
    }

    pub fn to_ring(&self) -> Result<CoeffRing> {
        CoeffRing::new(self.m, self.d)
    }
}

/// A ring element as JSON: a rational (`"p/q"` or an integer), `{"zeta": k}`
/// for `zeta_m^k` (optionally times a rational `"times"`), or the coordinate
/// list in the basis `zeta^i sqrt(D)^j`, index `i + j * phi(m)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffDoc {
    Rational(RatStr),
    Zeta {
        zeta: i64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        times: Option<RatStr>,
    },
    Coords(Vec<RatStr>),
}

impl CoeffDoc {
    pub fn of(c: &CoeffElem) -> Self {
        match c.as_rat() {
            Some(q) => CoeffDoc::Rational(RatStr(q)),
            None => CoeffDoc::Coords(c.coords().iter().cloned().map(RatStr).collect()),
        }
    }

    pub fn to_elem(&self, ring: &CoeffRing) -> Result<CoeffElem> {
        match self {
            CoeffDoc::Rational(q) => Ok(ring.from_rat(q.0.clone())),
            CoeffDoc::Zeta { zeta, times } => {
                let z = ring.zeta_pow(*zeta);
                Ok(match times {
                    Some(q) => z.scale(&q.0),
                    None => z,
                })
            }
            CoeffDoc::Coords(cs) => {
                if cs.len() != ring.dim() {
                    return Err(Error::Parse(format!(
                        "{} coordinates for a ring of dimension {}",
                        cs.len(),
                        ring.dim()
                    )));
                }
                let mut acc = ring.zero();
                let d1 = ring.deg1();
                let s = if ring.deg2() == 2 { Some(ring.sqrt_d()?) } else { None };
                for (idx, q) in cs.iter().enumerate() {
                    if q.0.is_zero() {
                        continue;
                    }
                    let mut b = ring.zeta_pow((idx % d1) as i64);
                    if idx >= d1 {
                        b = b.times(s.as_ref().expect("second block exists"));
                    }
                    acc = acc.plus(&b.scale(&q.0));
                }
                Ok(acc)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassValueDoc {
    pub class: Vec<i64>,
    #[serde(alias = "re")]
    pub value: CoeffDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchwartzDoc {
    pub n: usize,
    #[serde(default = "one_u64")]
    pub d: u64,
    #[serde(default = "one_u64")]
    pub f: u64,
    #[serde(default)]
    pub ring: RingDoc,
    pub values: Vec<ClassValueDoc>,
}

fn one_u64() -> u64 {
    1
}

impl Serialize for SchwartzFn {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_doc().serialize(s)
    }
}

impl<'de> Deserialize<'de> for SchwartzFn {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = SchwartzDoc::deserialize(d)?;
        SchwartzFn::from_doc(&doc).map_err(serde::de::Error::custom)
    }
}

/// A function on `Q^n` with finite support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSupportFn {
    n: usize,
    ring: CoeffRing,
    values: BTreeMap<Vec<Rat>, CoeffElem>,
}

impl FiniteSupportFn {
    pub fn new(n: usize, ring: &CoeffRing) -> Self {
        FiniteSupportFn { n, ring: ring.clone(), values: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> &CoeffRing {
        &self.ring
    }

    pub fn values(&self) -> &BTreeMap<Vec<Rat>, CoeffElem> {
        &self.values
    }

    /// Adds `c` to the value at `w`.
    pub fn add_point(&mut self, w: Vec<Rat>, c: CoeffElem) -> Result<()> {
        if w.len() != self.n {
            return Err(Error::DimensionMismatch(format!("point {} in Q^{}", fmt_vec(&w), self.n)));
        }
        let c = c.lift(&self.ring)?;
        let v = self.values.get(&w).map_or(c.clone(), |x| x.plus(&c));
        if v.vanishes() {
            self.values.remove(&w);
        } else {
            self.values.insert(w, v);
        }
        Ok(())
    }

    /// `w -> A(w - v)`.
    pub fn translate(&self, v: &[Rat]) -> FiniteSupportFn {
        FiniteSupportFn {
            n: self.n,
            ring: self.ring.clone(),
            values: self
                .values
                .iter()
                .map(|(w, c)| (w.iter().zip(v).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }
}
