//! Solomon's half-integral cocycle on 2x2 matrices, the explicit function
//! relating it to sigma, and closed forms for `sigma(1, alpha)` in the plane.

use num_traits::{One, Signed, Zero};

use super::SignValue;
use crate::error::{Error, Result};
use crate::exactnum::{rat, sign_of, Matrix, Rat};

fn first_column(a: &Matrix) -> [Rat; 2] {
    [a.get(0, 0).clone(), a.get(1, 0).clone()]
}

fn det2(u: &[Rat; 2], v: &[Rat; 2]) -> Rat {
    &u[0] * &v[1] - &u[1] * &v[0]
}

/// `s(alpha, beta)(w)`: with `u = alpha e1`, `v = beta e1` a basis, this is
/// `sign det(u, v)` inside the open cone they span, half of it on the two
/// boundary rays, and 0 elsewhere. If `u, v` are dependent it is 0.
pub fn solomon_s(alpha: &Matrix, beta: &Matrix, w: &[Rat]) -> Rat {
    let u = first_column(alpha);
    let v = first_column(beta);
    let det = det2(&u, &v);
    if det.is_zero() {
        return Rat::zero();
    }
    // w = x u + y v
    let x = (&w[0] * &v[1] - &w[1] * &v[0]) / &det;
    let y = (&u[0] * &w[1] - &u[1] * &w[0]) / &det;
    let s = Rat::from_integer(sign_of(&det).into());
    match (sign_of(&x), sign_of(&y)) {
        (1, 1) => s,
        (1, 0) | (0, 1) => s * rat(1, 2),
        _ => Rat::zero(),
    }
}

/// The function that is `1/2` on the open positive x-axis and 0 elsewhere.
pub fn coboundary_tau_half(w: &[Rat]) -> Rat {
    if w[1].is_zero() && w[0].is_positive() {
        rat(1, 2)
    } else {
        Rat::zero()
    }
}

/// `(alpha * f)(w) = sign(det alpha) f(alpha^{-1} w)`.
pub fn act_point<F>(alpha: &Matrix, f: F, w: &[Rat]) -> Result<Rat>
where
    F: Fn(&[Rat]) -> Rat,
{
    let pre = alpha.solve(w)?;
    let s = sign_of(&alpha.det());
    Ok(Rat::from_integer(s.into()) * f(&pre))
}

/// Which shape of closed form applies to a 2x2 matrix, with its parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlanarCase {
    /// `alpha = [[a, b], [0, c]]`.
    UpperTriangular { a: Rat, b: Rat, c: Rat },
    /// `alpha = [[a, b], [0, c]] * [[0, 1], [1, 0]] * [[1, d], [0, 1]]`.
    Swapped { a: Rat, b: Rat, c: Rat, d: Rat },
}

impl PlanarCase {
    /// `(sign a, sign c)`, the label of the sub-case.
    pub fn signs(&self) -> (i8, i8) {
        match self {
            PlanarCase::UpperTriangular { a, c, .. } | PlanarCase::Swapped { a, c, .. } => {
                (sign_of(a), sign_of(c))
            }
        }
    }
}

/// Factors `alpha` into one of the two closed-form shapes.
pub fn planar_case(alpha: &Matrix) -> Result<PlanarCase> {
    if alpha.rows() != 2 || alpha.cols() != 2 {
        return Err(Error::DimensionMismatch(format!("expected 2x2, got {alpha}")));
    }
    let (p, q, r, s) = (alpha.get(0, 0), alpha.get(0, 1), alpha.get(1, 0), alpha.get(1, 1));
    if r.is_zero() {
        if p.is_zero() || s.is_zero() {
            return Err(Error::CaseDecompositionFailure(alpha.to_string()));
        }
        return Ok(PlanarCase::UpperTriangular { a: p.clone(), b: q.clone(), c: s.clone() });
    }
    // [[b, b d + a], [c, c d]] = [[p, q], [r, s]]
    let c = r.clone();
    let b = p.clone();
    let d = s / r;
    let a = q - p * &d;
    if a.is_zero() {
        return Err(Error::CaseDecompositionFailure(alpha.to_string()));
    }
    Ok(PlanarCase::Swapped { a, b, c, d })
}

/// Closed form of `sigma(1, alpha)(w)` for 2x2 `alpha`.
///
/// In the swapped shape with `a < 0 < c` the value is 1 exactly when `y > 0`
/// and `cx - by >= 0`; the perturbation puts the ray `cx = by` inside the
/// region. This agrees with direct evaluation.
pub fn closed_form_sigma_n2(alpha: &Matrix, w: &[Rat]) -> Result<SignValue> {
    if w.len() != 2 {
        return Err(Error::DimensionMismatch(format!("point of length {}", w.len())));
    }
    if w.iter().all(Zero::is_zero) {
        return Err(Error::ZeroVector);
    }
    let (x, y) = (&w[0], &w[1]);
    let case = planar_case(alpha)?;
    let (sa, sc) = case.signs();
    let value = match &case {
        PlanarCase::UpperTriangular { .. } => match (sa, sc) {
            (1, 1) => 0,
            (1, -1) => {
                if x.is_positive() && y.is_zero() {
                    -1
                } else {
                    0
                }
            }
            (-1, 1) => i8::from(y.is_positive()),
            _ => i8::from(y.is_positive() || (y.is_zero() && x.is_negative())),
        },
        PlanarCase::Swapped { b, c, .. } => {
            let t = c * x - b * y;
            let ypos = y.is_positive();
            match (sa, sc) {
                (1, 1) => i8::from(ypos && t.is_positive()),
                (1, -1) => -i8::from(!ypos && t.is_negative()),
                (-1, 1) => i8::from(ypos && !t.is_negative()),
                _ => -i8::from(!ypos && !t.is_positive()),
            }
        }
    };
    Ok(value)
}

/// Literal value of the tabulated swapped case `a < 0 < c`, where the table
/// asks for `cx - by <= 0`. Kept to document that it disagrees with sigma.
pub fn tabulated_swapped_negative_positive(alpha: &Matrix, w: &[Rat]) -> Result<SignValue> {
    match planar_case(alpha)? {
        PlanarCase::Swapped { b, c, .. } => {
            let t = &c * &w[0] - &b * &w[1];
            Ok(i8::from(w[1].is_positive() && !t.is_positive()))
        }
        other => Err(Error::CaseDecompositionFailure(format!("{other:?}"))),
    }
}

/// `(sigma - s)(alpha, beta)(w) - ((beta * t) - (alpha * t))(w)` where `t` is
/// [`coboundary_tau_half`]. Constant in `w` whenever `alpha e1` and `beta e1`
/// are independent.
pub fn solomon_defect(alpha: &Matrix, beta: &Matrix, w: &[Rat]) -> Result<Rat> {
    solomon_defect_with_sign(alpha, beta, w, 1)
}

/// Same combination with the coboundary term taken as `alpha * t - beta * t`
/// (`orientation = -1`).
pub fn solomon_defect_with_sign(
    alpha: &Matrix,
    beta: &Matrix,
    w: &[Rat],
    orientation: i8,
) -> Result<Rat> {
    let sigma = Rat::from_integer(super::sigma_eval(&[alpha.clone(), beta.clone()], w)?.into());
    let s = solomon_s(alpha, beta, w);
    let tb = act_point(beta, coboundary_tau_half, w)?;
    let ta = act_point(alpha, coboundary_tau_half, w)?;
    let cob = if orientation >= 0 { tb - ta } else { ta - tb };
    Ok(sigma - s - cob)
}

/// Helper for callers that need `±1` as a rational.
pub fn unit_rat(s: i8) -> Rat {
    match s {
        0 => Rat::zero(),
        1 => Rat::one(),
        _ => -Rat::one(),
    }
}
