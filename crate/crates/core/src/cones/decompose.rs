use num_traits::{One, Zero};

use super::arrangement::{faces, normalize_hyperplanes, Face};
use super::{ConeCombo, LexLinearForm, OpenSimplicialCone};
use crate::cocycle::SigmaFunction;
use crate::error::{Error, Result};
use crate::exactnum::{Matrix, Rat};
use crate::exec::Exec;

/// Largest dimension for which cone decompositions are produced.
pub const MAX_DECOMPOSE_DIM: usize = 3;

/// Writes a function that is constant on every face of the arrangement cut out
/// by `forms` (together with the coordinate hyperplanes) as a combination of
/// open simplicial cones. `value` is called once per face, at a point inside it.
pub fn decompose_indicator<F>(n: usize, forms: &[Vec<Rat>], value: F, exec: Exec) -> Result<ConeCombo>
where
    F: Fn(&[Rat]) -> Result<Rat> + Sync + Send,
{
    if n == 0 || n > MAX_DECOMPOSE_DIM {
        return Err(Error::UnsupportedDimension(n));
    }
    let hs = normalize_hyperplanes(n, forms);
    let fs: Vec<Face> = faces(n, &hs)?;
    let values = exec.map(&fs, |f| value(&f.sample));
    let mut combo = ConeCombo::zero(n);
    for (face, v) in fs.iter().zip(values) {
        let v = v?;
        if v.is_zero() {
            continue;
        }
        for gens in face.triangulate() {
            combo.push(v.clone(), OpenSimplicialCone::new(gens)?);
        }
    }
    Ok(combo)
}

/// The hyperplanes on whose faces `sigma` is constant: every form that can
/// decide the sign of a coordinate.
pub fn sigma_hyperplanes(f: &SigmaFunction) -> Vec<Vec<Rat>> {
    f.coordinate_forms().iter().flat_map(|l| l.forms().iter().cloned()).collect()
}

/// `sigma(alpha_1..alpha_n)` as an explicit combination of open cones with
/// coefficients in {-1, 1}; it agrees with pointwise evaluation everywhere.
pub fn sigma_decompose(alphas: &[Matrix]) -> Result<ConeCombo> {
    sigma_decompose_with(alphas, Exec::default())
}

pub fn sigma_decompose_with(alphas: &[Matrix], exec: Exec) -> Result<ConeCombo> {
    let n = alphas.len();
    if n > MAX_DECOMPOSE_DIM {
        return Err(Error::UnsupportedDimension(n));
    }
    let sigma = SigmaFunction::new(alphas)?;
    let forms = sigma_hyperplanes(&sigma);
    let sign_rat = |s: i8| match s {
        0 => Rat::zero(),
        1 => Rat::one(),
        _ => -Rat::one(),
    };
    decompose_indicator(n, &forms, |w| Ok(sign_rat(sigma.eval_unchecked(w))), exec)
}

/// Points inside every face of the arrangement used to decompose `sigma`:
/// the places where a decomposition is most likely to go wrong.
pub fn sigma_face_samples(alphas: &[Matrix]) -> Result<Vec<Vec<Rat>>> {
    let n = alphas.len();
    if n == 0 || n > MAX_DECOMPOSE_DIM {
        return Err(Error::UnsupportedDimension(n));
    }
    let sigma = SigmaFunction::new(alphas)?;
    let hs = normalize_hyperplanes(n, &sigma_hyperplanes(&sigma));
    Ok(faces(n, &hs)?.into_iter().map(|f| f.sample).collect())
}

/// Indicator of `{w : the first form not vanishing at w is positive}`.
pub fn lex_positive_region(f: &LexLinearForm) -> Result<ConeCombo> {
    if f.is_zero() {
        return Err(Error::AllFormsZero);
    }
    let r = f.reduced();
    decompose_indicator(
        f.dim(),
        r.forms(),
        |w| Ok(if r.sign_at(w) > 0 { Rat::one() } else { Rat::zero() }),
        Exec::Sequential,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycle::sigma_eval;
    use crate::exactnum::int;

    fn v(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| int(x)).collect()
    }

    fn grid(n: usize) -> Vec<Vec<Rat>> {
        let r = -2..=2;
        let mut out = Vec::new();
        match n {
            1 => out.extend(r.clone().filter(|&x| x != 0).map(|x| v(&[x]))),
            2 => {
                for x in r.clone() {
                    for y in r.clone() {
                        out.push(v(&[x, y]));
                    }
                }
            }
            _ => {
                for x in r.clone() {
                    for y in r.clone() {
                        for z in r.clone() {
                            out.push(v(&[x, y, z]));
                        }
                    }
                }
            }
        }
        out.retain(|p| p.iter().any(|x| !x.is_zero()));
        out
    }

    #[test]
    fn planar_examples() {
        let id = Matrix::identity(2);
        let c = sigma_decompose(&[id.clone(), Matrix::from_ints(&[&[1, 0], &[0, -1]])]).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.terms()[0].0, int(-1));
        assert_eq!(c.terms()[0].1, OpenSimplicialCone::from_ints(&[&[1, 0]]).unwrap());

        let c = sigma_decompose(&[id, Matrix::from_ints(&[&[-1, 0], &[0, 1]])]).unwrap();
        for w in grid(2) {
            let expected = if w[1] > Rat::zero() { int(1) } else { int(0) };
            assert_eq!(c.eval(&w).unwrap(), expected, "{w:?}");
        }
    }

    #[test]
    fn line_example() {
        let c = sigma_decompose(&[Matrix::from_ints(&[&[1]])]).unwrap();
        assert_eq!(c, ConeCombo::single(int(1), OpenSimplicialCone::from_ints(&[&[1]]).unwrap()));
    }

    #[test]
    fn agrees_with_evaluation_in_three_dimensions() {
        let a = [
            Matrix::from_ints(&[&[1, 2, 0], &[0, 1, 1], &[1, 0, 1]]),
            Matrix::from_ints(&[&[0, -1, 1], &[1, 0, 2], &[-1, 1, 0]]),
            Matrix::from_ints(&[&[2, 0, -1], &[1, 1, 1], &[0, 3, 1]]),
        ];
        let c = sigma_decompose(&a).unwrap();
        for w in grid(3).into_iter().chain(sigma_face_samples(&a).unwrap()) {
            assert_eq!(c.eval(&w).unwrap(), int(sigma_eval(&a, &w).unwrap() as i64), "{w:?}");
        }
    }

    #[test]
    fn lex_regions() {
        let x = LexLinearForm::new(2, vec![v(&[1, 0])]).unwrap();
        let c = lex_positive_region(&x).unwrap();
        for w in grid(2) {
            assert_eq!(c.eval(&w).unwrap(), int(i64::from(w[0] > Rat::zero())));
        }
        let yx = LexLinearForm::new(2, vec![v(&[0, 1]), v(&[1, 0])]).unwrap();
        let c = lex_positive_region(&yx).unwrap();
        for w in grid(2) {
            let inside = w[1] > Rat::zero() || (w[1].is_zero() && w[0] > Rat::zero());
            assert_eq!(c.eval(&w).unwrap(), int(i64::from(inside)));
        }
        let xm = LexLinearForm::new(2, vec![v(&[1, 0]), v(&[-1, 0])]).unwrap();
        let c = lex_positive_region(&xm).unwrap();
        for w in grid(2) {
            assert_eq!(c.eval(&w).unwrap(), int(i64::from(w[0] > Rat::zero())));
        }
        let zero = LexLinearForm::new(2, vec![v(&[0, 0])]).unwrap();
        assert_eq!(lex_positive_region(&zero), Err(Error::AllFormsZero));
    }

    #[test]
    fn too_many_dimensions() {
        let a = vec![Matrix::identity(4); 4];
        assert_eq!(sigma_decompose(&a), Err(Error::UnsupportedDimension(4)));
    }
}
