//! Signed combinations of relatively open simplicial cones, the linear-group
//! action on them, and the decomposition of sigma into such combinations.

pub mod arrangement;
pub mod decompose;
pub mod lexform;

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::rat::{dot, fmt_vec, primitive};
use crate::exactnum::{fmt_rat, sign_of, Matrix, Rat, RatStr};

pub use decompose::{decompose_indicator, lex_positive_region, sigma_decompose, sigma_decompose_with};
pub use lexform::LexLinearForm;

/// `C(v_1..v_r) = { sum x_i v_i : all x_i > 0 }` for independent `v_i` in Q^n.
///
/// Generators are stored as primitive integer vectors in sorted order, which
/// does not change the cone and makes equal cones compare equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OpenSimplicialCone {
    n: usize,
    gens: Vec<Vec<Rat>>,
    /// `coord[i] . w` is the i-th coordinate of `w` in the generator basis,
    /// valid for `w` in the span.
    coord: Vec<Vec<Rat>>,
    /// Forms cutting out the span.
    normals: Vec<Vec<Rat>>,
}

impl OpenSimplicialCone {
    pub fn new(gens: Vec<Vec<Rat>>) -> Result<Self> {
        let Some(first) = gens.first() else {
            return Err(Error::DimensionMismatch("a cone needs at least one generator".into()));
        };
        let n = first.len();
        if gens.iter().any(|g| g.len() != n) {
            return Err(Error::DimensionMismatch("generators of different lengths".into()));
        }
        if gens.len() > n {
            return Err(Error::DimensionMismatch(format!("{} generators in dimension {n}", gens.len())));
        }
        let mut gens: Vec<Vec<Rat>> = gens.iter().map(|g| primitive(g)).collect();
        gens.sort();
        let r = gens.len();
        let gt = Matrix::from_rows(&gens); // r x n, rows are generators
        let (_, pivots) = gt.rref();
        if pivots.len() < r {
            return Err(Error::DimensionMismatch(format!(
                "generators {} are linearly dependent",
                gens.iter().map(|g| fmt_vec(g)).collect::<Vec<_>>().join(", ")
            )));
        }
        // Square block of the generators at the pivot coordinates.
        let block = Matrix::from_rows(
            &gens.iter().map(|g| pivots.iter().map(|&p| g[p].clone()).collect()).collect::<Vec<_>>(),
        )
        .transpose(); // r x r, columns are generators restricted to pivots
        let inv = block.inverse()?;
        let coord = (0..r)
            .map(|i| {
                let mut f = vec![Rat::zero(); n];
                for (k, &p) in pivots.iter().enumerate() {
                    f[p] = inv.get(i, k).clone();
                }
                f
            })
            .collect();
        let normals = gt.nullspace();
        Ok(OpenSimplicialCone { n, gens, coord, normals })
    }

    pub fn from_ints(gens: &[&[i64]]) -> Result<Self> {
        Self::new(gens.iter().map(|g| g.iter().map(|&x| Rat::from_integer(x.into())).collect()).collect())
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.gens.len()
    }

    pub fn generators(&self) -> &[Vec<Rat>] {
        &self.gens
    }

    /// Coordinates of `w` in the generator basis, if `w` is in the span.
    pub fn coordinates(&self, w: &[Rat]) -> Option<Vec<Rat>> {
        if self.normals.iter().any(|h| !dot(h, w).is_zero()) {
            return None;
        }
        Some(self.coord.iter().map(|c| dot(c, w)).collect())
    }

    pub fn contains(&self, w: &[Rat]) -> bool {
        if self.normals.iter().any(|h| !dot(h, w).is_zero()) {
            return false;
        }
        self.coord.iter().all(|c| sign_of(&dot(c, w)) > 0)
    }

    /// Image under `alpha` (generators mapped; orientation is not tracked here).
    pub fn map(&self, alpha: &Matrix) -> Result<Self> {
        Self::new(self.gens.iter().map(|g| alpha.mul_vec(g)).collect())
    }
}

impl fmt::Debug for OpenSimplicialCone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.gens.iter().map(|g| fmt_vec(g)).collect();
        write!(f, "C({})", gens.join(", "))
    }
}

impl PartialOrd for OpenSimplicialCone {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OpenSimplicialCone {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.gens.len(), &self.gens).cmp(&(other.gens.len(), &other.gens))
    }
}

/// A finite rational combination of open cone indicators plus a constant.
#[derive(Clone, PartialEq, Eq)]
pub struct ConeCombo {
    n: usize,
    constant: Rat,
    terms: Vec<(Rat, OpenSimplicialCone)>,
}

impl ConeCombo {
    pub fn zero(n: usize) -> Self {
        ConeCombo { n, constant: Rat::zero(), terms: Vec::new() }
    }

    pub fn constant(n: usize, c: Rat) -> Self {
        ConeCombo { n, constant: c, terms: Vec::new() }
    }

    pub fn single(coeff: Rat, cone: OpenSimplicialCone) -> Self {
        let mut c = ConeCombo::zero(cone.ambient_dim());
        c.push(coeff, cone);
        c
    }

    pub fn from_terms(n: usize, terms: Vec<(Rat, OpenSimplicialCone)>) -> Result<Self> {
        let mut c = ConeCombo::zero(n);
        for (k, cone) in terms {
            if cone.ambient_dim() != n {
                return Err(Error::DimensionMismatch(format!("{cone:?} in a combination over Q^{n}")));
            }
            c.push(k, cone);
        }
        Ok(c)
    }

    pub fn push(&mut self, coeff: Rat, cone: OpenSimplicialCone) {
        assert_eq!(cone.ambient_dim(), self.n, "cone of the wrong dimension");
        if !coeff.is_zero() {
            self.terms.push((coeff, cone));
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn constant_term(&self) -> &Rat {
        &self.constant
    }

    pub fn terms(&self) -> &[(Rat, OpenSimplicialCone)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty() && self.constant.is_zero()
    }

    pub fn eval(&self, w: &[Rat]) -> Result<Rat> {
        if w.len() != self.n {
            return Err(Error::DimensionMismatch(format!("point of length {} in Q^{}", w.len(), self.n)));
        }
        if w.iter().all(Zero::is_zero) {
            return Err(Error::ZeroVector);
        }
        let mut acc = self.constant.clone();
        for (k, c) in &self.terms {
            if c.contains(w) {
                acc += k;
            }
        }
        Ok(acc)
    }

    pub fn add(&self, other: &ConeCombo) -> ConeCombo {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        out.constant += &other.constant;
        out.terms.extend(other.terms.iter().cloned());
        out.simplify()
    }

    pub fn scale(&self, k: &Rat) -> ConeCombo {
        let mut out = ConeCombo::constant(self.n, &self.constant * k);
        for (c, cone) in &self.terms {
            out.push(c * k, cone.clone());
        }
        out
    }

    /// Merges repeated cones, drops zero coefficients and sorts the terms.
    pub fn simplify(&self) -> ConeCombo {
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| a.1.cmp(&b.1));
        let mut out: Vec<(Rat, OpenSimplicialCone)> = Vec::new();
        for (k, c) in terms {
            match out.last_mut() {
                Some((acc, last)) if *last == c => *acc += k,
                _ => out.push((k, c)),
            }
        }
        out.retain(|(k, _)| !k.is_zero());
        ConeCombo { n: self.n, constant: self.constant.clone(), terms: out }
    }

    /// `(alpha * c)(v) = sign(det alpha) c(alpha^{-1} v)`.
    pub fn act(&self, alpha: &Matrix) -> Result<ConeCombo> {
        if alpha.rows() != self.n || alpha.cols() != self.n {
            return Err(Error::DimensionMismatch(format!("{alpha} acting on Q^{}", self.n)));
        }
        let s = sign_of(&alpha.det());
        if s == 0 {
            return Err(Error::SingularMatrix(alpha.to_string()));
        }
        let s = if s > 0 { Rat::one() } else { -Rat::one() };
        let mut out = ConeCombo::constant(self.n, &self.constant * &s);
        for (k, c) in &self.terms {
            out.push(k * &s, c.map(alpha)?);
        }
        Ok(out)
    }
}

impl fmt::Debug for ConeCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if !self.constant.is_zero() {
            parts.push(fmt_rat(&self.constant));
        }
        for (k, c) in &self.terms {
            parts.push(format!("{}*{c:?}", fmt_rat(k)));
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Serialized form of a [`ConeCombo`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeComboDoc {
    pub n: usize,
    #[serde(default = "zero_str")]
    pub constant: RatStr,
    pub cones: Vec<ConeTermDoc>,
}

fn zero_str() -> RatStr {
    RatStr(Rat::zero())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeTermDoc {
    pub coeff: RatStr,
    pub generators: Vec<Vec<RatStr>>,
}

impl ConeCombo {
    pub fn to_doc(&self) -> ConeComboDoc {
        ConeComboDoc {
            n: self.n,
            constant: RatStr(self.constant.clone()),
            cones: self
                .terms
                .iter()
                .map(|(k, c)| ConeTermDoc {
                    coeff: RatStr(k.clone()),
                    generators: c.gens.iter().map(|g| g.iter().cloned().map(RatStr).collect()).collect(),
                })
                .collect(),
        }
    }

    pub fn from_doc(doc: &ConeComboDoc) -> Result<Self> {
        let mut c = ConeCombo::constant(doc.n, doc.constant.0.clone());
        for t in &doc.cones {
            let gens: Vec<Vec<Rat>> =
                t.generators.iter().map(|g| g.iter().map(|x| x.0.clone()).collect()).collect();
            let cone = OpenSimplicialCone::new(gens)?;
            if cone.ambient_dim() != doc.n {
                return Err(Error::DimensionMismatch(format!("{cone:?} in a combination over Q^{}", doc.n)));
            }
            c.push(t.coeff.0.clone(), cone);
        }
        Ok(c)
    }
}

impl Serialize for ConeCombo {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_doc().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ConeCombo {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = ConeComboDoc::deserialize(d)?;
        ConeCombo::from_doc(&doc).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};

    fn v(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| int(x)).collect()
    }

    fn cone(g: &[&[i64]]) -> OpenSimplicialCone {
        OpenSimplicialCone::from_ints(g).unwrap()
    }

    #[test]
    fn membership() {
        let q = cone(&[&[1, 0], &[0, 1]]);
        assert!(q.contains(&v(&[1, 1])));
        assert!(!q.contains(&v(&[1, 0])));
        let ray = cone(&[&[2, 0, 2]]);
        assert!(ray.contains(&v(&[3, 0, 3])));
        assert!(!ray.contains(&v(&[3, 1, 3])));
        assert!(!ray.contains(&v(&[-1, 0, -1])));
        assert!(OpenSimplicialCone::from_ints(&[&[1, 2], &[2, 4]]).is_err());
    }

    #[test]
    fn evaluation_examples() {
        let quad = cone(&[&[1, 0], &[0, 1]]);
        let ray = cone(&[&[1, 0]]);
        assert_eq!(ConeCombo::single(int(1), quad.clone()).eval(&v(&[1, 1])).unwrap(), int(1));
        let mut c = ConeCombo::single(int(1), quad);
        c.push(int(-1), ray.clone());
        assert_eq!(c.eval(&v(&[1, 0])).unwrap(), int(-1));
        let half = ConeCombo::single(rat(1, 2), ray);
        assert_eq!(half.eval(&v(&[2, 0])).unwrap(), rat(1, 2));
        assert_eq!(half.eval(&v(&[0, 0])), Err(Error::ZeroVector));
    }

    #[test]
    fn action_examples() {
        let c = ConeCombo::single(int(1), cone(&[&[1, 0], &[0, 1]]));
        assert_eq!(c.act(&Matrix::identity(2)).unwrap(), c);
        let flipped = c.act(&Matrix::from_ints(&[&[1, 0], &[0, -1]])).unwrap();
        assert_eq!(flipped.eval(&v(&[2, -3])).unwrap(), int(-1));
        assert_eq!(flipped.eval(&v(&[2, 3])).unwrap(), int(0));
    }

    #[test]
    fn json_round_trip() {
        let mut c = ConeCombo::constant(2, rat(1, 2));
        c.push(int(-1), cone(&[&[1, 0]]));
        c.push(rat(3, 2), cone(&[&[1, 1], &[-1, 1]]));
        let s = serde_json::to_string(&c).unwrap();
        let back: ConeCombo = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
        assert!(s.contains(r#""coeff":"3/2""#));
    }
}
