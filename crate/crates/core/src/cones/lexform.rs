use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactnum::{sign_of, Matrix, Rat};
use crate::exactnum::rat::dot;

/// A finite sequence of linear forms on Q^n. At `w` it takes the sign of the
/// first form that does not vanish there. This is how a polynomial in the
/// infinitesimals with linear-form coefficients, read in dominance order,
/// behaves at a rational point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LexLinearForm {
    n: usize,
    forms: Vec<Vec<Rat>>,
}

impl LexLinearForm {
    /// Zero forms are dropped; they never decide a sign.
    pub fn new(n: usize, forms: Vec<Vec<Rat>>) -> Result<Self> {
        if let Some(bad) = forms.iter().find(|f| f.len() != n) {
            return Err(Error::DimensionMismatch(format!(
                "linear form of length {} in dimension {n}",
                bad.len()
            )));
        }
        let forms = forms.into_iter().filter(|f| f.iter().any(|x| !x.is_zero())).collect();
        Ok(LexLinearForm { n, forms })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn forms(&self) -> &[Vec<Rat>] {
        &self.forms
    }

    pub fn is_zero(&self) -> bool {
        self.forms.is_empty()
    }

    /// Sign of the first nonvanishing form at `w`, or 0 if all vanish.
    pub fn sign_at(&self, w: &[Rat]) -> i8 {
        for f in &self.forms {
            let s = sign_of(&dot(f, w));
            if s != 0 {
                return s;
            }
        }
        0
    }

    /// Drops every form lying in the span of the forms before it. Such a form
    /// vanishes wherever its predecessors do, so it can never decide a sign;
    /// the result has at most `n` forms and the same sign function.
    pub fn reduced(&self) -> LexLinearForm {
        let mut kept: Vec<Vec<Rat>> = Vec::new();
        for f in &self.forms {
            let mut trial = kept.clone();
            trial.push(f.clone());
            if Matrix::from_rows(&trial).rank() == trial.len() {
                kept = trial;
            }
            if kept.len() == self.n {
                break;
            }
        }
        LexLinearForm { n: self.n, forms: kept }
    }
}
