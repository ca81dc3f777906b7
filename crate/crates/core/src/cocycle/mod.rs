//! The sign functions `d` and `c`, and pointwise evaluation of the Shintani
//! cocycle and of its coboundary.

pub mod solomon;
pub mod verify;

use num_traits::Zero;

use crate::cones::lexform::LexLinearForm;
use crate::error::{Error, Result};
use crate::exactnum::{det_columns, sign_of, Exponent, MPoly, Matrix, OrderedRing, Rat};

/// A value in {-1, 0, 1}.
pub type SignValue = i8;

fn check_vectors<R>(vs: &[Vec<R>], n: usize) -> Result<()> {
    if let Some(bad) = vs.iter().find(|v| v.len() != n) {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} in dimension {n}",
            bad.len()
        )));
    }
    Ok(())
}

fn omit<T: Clone>(xs: &[T], i: usize) -> Vec<T> {
    xs.iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .map(|(_, x)| x.clone())
        .collect()
}

/// `d(v_0, ..., v_n)` for n+1 vectors in an ordered n-dimensional space.
///
/// The kernel of `(v_0 | ... | v_n)` is spanned by `l_i = (-1)^i D_i` where
/// `D_i` is the determinant with `v_i` omitted. `d` is the common sign of the
/// `l_i` when they all agree, which equals `(-1)^i sign D_i` for every i, and
/// 0 otherwise.
pub fn d_value<R: OrderedRing>(vs: &[Vec<R>]) -> Result<SignValue> {
    if vs.len() < 2 {
        return Err(Error::DimensionMismatch(format!("d needs n+1 >= 2 vectors, got {}", vs.len())));
    }
    let n = vs.len() - 1;
    check_vectors(vs, n)?;
    let mut common: Option<i8> = None;
    let mut agree = true;
    for i in 0..=n {
        let rest = omit(vs, i);
        let cols: Vec<&[R]> = rest.iter().map(Vec::as_slice).collect();
        let s = det_columns(&cols).sign();
        if s == 0 {
            return Err(Error::GeneralPositionViolation(format!(
                "the vectors other than number {i} are linearly dependent"
            )));
        }
        let lambda = if i % 2 == 0 { s } else { -s };
        match common {
            None => common = Some(lambda),
            Some(c) if c != lambda => agree = false,
            _ => {}
        }
    }
    Ok(if agree { common.unwrap_or(0) } else { 0 })
}

/// `c(v_1, ..., v_n)(w)`: `sign det V` if `w` has all coordinates positive
/// in the basis `v`, else 0. Coordinates come from Cramer's rule, so no
/// division in the ordered ring is needed.
pub fn c_value<R: OrderedRing>(vs: &[Vec<R>], w: &[R]) -> Result<SignValue> {
    let n = vs.len();
    check_vectors(vs, n)?;
    if w.len() != n {
        return Err(Error::DimensionMismatch(format!("point of length {} in dimension {n}", w.len())));
    }
    let cols: Vec<&[R]> = vs.iter().map(Vec::as_slice).collect();
    let det_sign = det_columns(&cols).sign();
    if det_sign == 0 {
        return Err(Error::SingularBasis);
    }
    for i in 0..n {
        let mut replaced = cols.clone();
        replaced[i] = w;
        if det_columns(&replaced).sign() != det_sign {
            return Ok(0);
        }
    }
    Ok(det_sign)
}

/// `(1, e, e^2, ..., e^(n-1))` where `e` is the variable in `slot` of `nvars`.
pub fn moment_vector(n: usize, nvars: usize, slot: usize) -> Vec<MPoly> {
    let e = MPoly::var(nvars, slot);
    let mut out = Vec::with_capacity(n);
    let mut p = MPoly::one(nvars);
    for _ in 0..n {
        out.push(p.clone());
        p = &p * &e;
    }
    out
}

/// `alpha * v` for a rational matrix and a polynomial vector.
pub fn apply_matrix(alpha: &Matrix, v: &[MPoly]) -> Vec<MPoly> {
    let nvars = v[0].nvars();
    (0..alpha.rows())
        .map(|i| {
            v.iter().enumerate().fold(MPoly::zero(nvars), |acc, (j, x)| {
                let a = alpha.get(i, j);
                if a.is_zero() {
                    acc
                } else {
                    &acc + &x.scale(a)
                }
            })
        })
        .collect()
}

fn check_matrices(alphas: &[Matrix], n: usize) -> Result<()> {
    for (k, a) in alphas.iter().enumerate() {
        if a.rows() != n || a.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "matrix {k} is {}x{}, expected {n}x{n}",
                a.rows(),
                a.cols()
            )));
        }
        if a.det().is_zero() {
            return Err(Error::SingularMatrix(format!("matrix {k} = {a}")));
        }
    }
    Ok(())
}

/// Perturbed generators `alpha_k b(e_{slots[k]})`.
fn perturbed_columns(alphas: &[Matrix], nvars: usize, slots: &[usize]) -> Vec<Vec<MPoly>> {
    let n = alphas[0].rows();
    alphas
        .iter()
        .zip(slots)
        .map(|(a, &s)| apply_matrix(a, &moment_vector(n, nvars, s)))
        .collect()
}

/// Precomputed `w -> sigma(alpha_1, ..., alpha_n)(w)`.
///
/// Writing `V` for the matrix of perturbed generators, the coordinates of `w`
/// are `adj(V) w / det V`. Each entry of `adj(V) w` is a polynomial in the
/// infinitesimals whose coefficients are linear forms in `w`, stored as a
/// [`LexLinearForm`] in dominance order. Evaluation is then a handful of dot
/// products.
#[derive(Clone, Debug)]
pub struct SigmaFunction {
    n: usize,
    det_sign: i8,
    coords: Vec<LexLinearForm>,
}

impl SigmaFunction {
    pub fn new(alphas: &[Matrix]) -> Result<Self> {
        let n = alphas.len();
        let slots: Vec<usize> = (0..n).collect();
        Self::with_slots(alphas, n, &slots)
    }

    /// Same function, with `alpha_k` perturbed by the variable in `slots[k]`
    /// out of `nvars`. The slots must increase; this realizes the embeddings
    /// that skip a variable.
    pub fn with_slots(alphas: &[Matrix], nvars: usize, slots: &[usize]) -> Result<Self> {
        let n = alphas.len();
        if n == 0 {
            return Err(Error::DimensionMismatch("sigma needs at least one matrix".into()));
        }
        if slots.len() != n || slots.windows(2).any(|w| w[0] >= w[1]) || slots[n - 1] >= nvars {
            return Err(Error::Inconsistent(format!("bad variable slots {slots:?} for {nvars} variables")));
        }
        check_matrices(alphas, n)?;
        let cols = perturbed_columns(alphas, nvars, slots);
        let col_refs: Vec<&[MPoly]> = cols.iter().map(Vec::as_slice).collect();
        let det = det_columns(&col_refs);
        let det_sign = det.sign();
        if det_sign == 0 {
            // Excluded by the general-position lemma for perturbed generators.
            return Err(Error::Inconsistent("perturbed generators are dependent".into()));
        }
        // adj[i][j] = (-1)^(i+j) * minor(row j, column i)
        let mut coords = Vec::with_capacity(n);
        for i in 0..n {
            let mut entries: Vec<MPoly> = Vec::with_capacity(n);
            for j in 0..n {
                let cof = if n == 1 {
                    MPoly::one(nvars)
                } else {
                    let minor_cols: Vec<Vec<MPoly>> = omit(&cols, i)
                        .into_iter()
                        .map(|c| omit(&c, j))
                        .collect();
                    let refs: Vec<&[MPoly]> = minor_cols.iter().map(Vec::as_slice).collect();
                    det_columns(&refs)
                };
                entries.push(if (i + j) % 2 == 0 { cof } else { -&cof });
            }
            coords.push(lex_form_of(n, &entries)?);
        }
        Ok(SigmaFunction { n, det_sign, coords })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Sign of the determinant of the perturbed generators.
    pub fn det_sign(&self) -> i8 {
        self.det_sign
    }

    /// For each coordinate, its numerator as a lex sequence of linear forms.
    pub fn coordinate_forms(&self) -> &[LexLinearForm] {
        &self.coords
    }

    pub fn eval(&self, w: &[Rat]) -> Result<SignValue> {
        if w.len() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "point of length {} in dimension {}",
                w.len(),
                self.n
            )));
        }
        if w.iter().all(Zero::is_zero) {
            return Err(Error::ZeroVector);
        }
        Ok(self.eval_unchecked(w))
    }

    /// As [`eval`](Self::eval), for callers that already validated `w`.
    pub fn eval_unchecked(&self, w: &[Rat]) -> SignValue {
        for f in &self.coords {
            if f.sign_at(w) != self.det_sign {
                return 0;
            }
        }
        self.det_sign
    }
}

/// Collects `sum_j p_j w_j` (polynomials `p_j` in the infinitesimals) as a
/// lex sequence of linear forms in `w`, dominant exponent first.
fn lex_form_of(n: usize, entries: &[MPoly]) -> Result<LexLinearForm> {
    let mut exps: Vec<&Exponent> = entries.iter().flat_map(|p| p.terms().map(|(e, _)| e)).collect();
    exps.sort();
    exps.dedup();
    let forms = exps
        .into_iter()
        .map(|e| entries.iter().map(|p| p.coeff(e)).collect())
        .collect();
    Ok(LexLinearForm::new(n, forms)?.reduced())
}

/// `sigma(alpha_1, ..., alpha_n)(w)`.
pub fn sigma_eval(alphas: &[Matrix], w: &[Rat]) -> Result<SignValue> {
    SigmaFunction::new(alphas)?.eval(w)
}

/// `tau(alpha_0, ..., alpha_n) = d(alpha_0 b(e_0), ..., alpha_n b(e_n))`.
pub fn tau_cocycle(alphas: &[Matrix]) -> Result<SignValue> {
    if alphas.len() < 2 {
        return Err(Error::DimensionMismatch(format!(
            "tau needs n+1 >= 2 matrices, got {}",
            alphas.len()
        )));
    }
    let n = alphas.len() - 1;
    check_matrices(alphas, n)?;
    let slots: Vec<usize> = (0..=n).collect();
    let cols = perturbed_columns(alphas, n + 1, &slots);
    d_value(&cols)
}

/// `sum_i (-1)^i sigma(alpha_0, ..., ^alpha_i, ..., alpha_n)(w)`. With
/// `lifted`, each term keeps the variables of the remaining matrices inside
/// `e_0..e_n` instead of renumbering them `e_1..e_n`.
pub fn alternating_sigma_sum(alphas: &[Matrix], w: &[Rat], lifted: bool) -> Result<i64> {
    let n = alphas.len() - 1;
    let mut acc = 0i64;
    for i in 0..=n {
        let rest = omit(alphas, i);
        let f = if lifted {
            let slots: Vec<usize> = (0..=n).filter(|&k| k != i).collect();
            SigmaFunction::with_slots(&rest, n + 1, &slots)?
        } else {
            SigmaFunction::new(&rest)?
        };
        let v = f.eval(w)? as i64;
        acc += if i % 2 == 0 { v } else { -v };
    }
    Ok(acc)
}

/// `sign(det alpha)` as a [`SignValue`].
pub fn det_sign(alpha: &Matrix) -> SignValue {
    sign_of(&alpha.det())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};

    fn v(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| int(x)).collect()
    }

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_ints(rows)
    }

    #[test]
    fn d_examples() {
        assert_eq!(d_value(&[v(&[1]), v(&[-1])]).unwrap(), -1);
        assert_eq!(d_value(&[v(&[1, 0]), v(&[0, 1]), v(&[-1, -1])]).unwrap(), 1);
        assert_eq!(d_value(&[v(&[1, 0]), v(&[0, 1]), v(&[1, -1])]).unwrap(), 0);
        assert!(matches!(
            d_value(&[v(&[1, 0]), v(&[2, 0]), v(&[0, 1])]),
            Err(Error::GeneralPositionViolation(_))
        ));
    }

    #[test]
    fn c_examples() {
        let (e1, e2) = (v(&[1, 0]), v(&[0, 1]));
        assert_eq!(c_value(&[e1.clone(), e2.clone()], &v(&[1, 1])).unwrap(), 1);
        assert_eq!(c_value(&[e2.clone(), e1.clone()], &v(&[1, 1])).unwrap(), -1);
        assert_eq!(c_value(&[e1.clone(), e2.clone()], &v(&[-1, 1])).unwrap(), 0);
        assert_eq!(c_value(&[e1.clone(), e1], &v(&[1, 1])), Err(Error::SingularBasis));
    }

    #[test]
    fn sigma_examples_in_the_plane() {
        let id = Matrix::identity(2);
        assert_eq!(sigma_eval(&[id.clone(), m(&[&[-1, 0], &[0, 1]])], &v(&[3, 2])).unwrap(), 1);
        assert_eq!(sigma_eval(&[id.clone(), m(&[&[1, 0], &[0, -1]])], &v(&[3, 0])).unwrap(), -1);
        assert_eq!(sigma_eval(&[id.clone(), m(&[&[-1, 0], &[0, -1]])], &v(&[-2, 0])).unwrap(), 1);
        assert_eq!(sigma_eval(&[id.clone(), id.clone()], &v(&[0, 0])), Err(Error::ZeroVector));
        assert!(matches!(
            sigma_eval(&[id.clone(), m(&[&[1, 2], &[2, 4]])], &v(&[1, 1])),
            Err(Error::SingularMatrix(_))
        ));
    }

    #[test]
    fn sigma_in_dimension_one() {
        let one = m(&[&[1]]);
        assert_eq!(sigma_eval(std::slice::from_ref(&one), &[rat(1, 3)]).unwrap(), 1);
        assert_eq!(sigma_eval(&[one], &[int(-2)]).unwrap(), 0);
        assert_eq!(sigma_eval(&[m(&[&[-2]])], &[int(-2)]).unwrap(), -1);
    }

    #[test]
    fn cocycle_relation_on_a_small_example() {
        let a = [
            Matrix::identity(2),
            m(&[&[0, -1], &[1, 0]]),
            m(&[&[-1, 1], &[-1, 0]]),
        ];
        let tau = tau_cocycle(&a).unwrap() as i64;
        for x in -2..=2 {
            for y in -2..=2 {
                if x == 0 && y == 0 {
                    continue;
                }
                let w = v(&[x, y]);
                assert_eq!(alternating_sigma_sum(&a, &w, false).unwrap(), tau);
                assert_eq!(alternating_sigma_sum(&a, &w, true).unwrap(), tau);
            }
        }
    }
}
