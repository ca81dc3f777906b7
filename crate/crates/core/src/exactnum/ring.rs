use std::fmt;

use num_traits::{One, Zero};

use super::rat::{sign_of, Rat};

/// Minimal commutative-ring interface shared by rationals, polynomials and
/// ordered-field elements, so that determinants and sign tests are written once.
pub trait Ring: Clone + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn vanishes(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
}

/// A ring with a total order compatible with its arithmetic.
pub trait OrderedRing: Ring {
    fn sign(&self) -> i8;
}

impl Ring for Rat {
    fn zero_like(&self) -> Self {
        Rat::zero()
    }
    fn one_like(&self) -> Self {
        Rat::one()
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
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

impl OrderedRing for Rat {
    fn sign(&self) -> i8 {
        sign_of(self)
    }
}

/// Determinant of the square matrix whose COLUMNS are `cols`.
///
/// Division-free: expands column by column, memoizing the minors on each
/// subset of rows, so the cost is O(n 2^n) ring multiplications. Intended for
/// the small dimensions (n <= 6) where entries are polynomials.
pub fn det_columns<R: Ring>(cols: &[&[R]]) -> R {
    let n = cols.len();
    assert!(n > 0, "determinant of an empty matrix");
    assert!(cols.iter().all(|c| c.len() == n), "matrix is not square");
    assert!(n < usize::BITS as usize, "dimension too large");
    let unit = cols[0][0].one_like();
    // minors[mask] = det of the submatrix using columns 0..popcount(mask)
    // and the rows in `mask`.
    let mut minors: Vec<Option<R>> = vec![None; 1 << n];
    minors[0] = Some(unit);
    for mask in 0usize..(1 << n) {
        let Some(m) = minors[mask].clone() else { continue };
        if m.vanishes() {
            continue;
        }
        let k = mask.count_ones() as usize;
        if k == n {
            continue;
        }
        // Adding row r as the next row; sign from the number of chosen rows above r.
        for r in 0..n {
            if mask & (1 << r) != 0 {
                continue;
            }
            let entry = &cols[k][r];
            if entry.vanishes() {
                continue;
            }
            let above = (mask & ((1 << r) - 1)).count_ones();
            // Laplace expansion along column k restricted to rows mask|r:
            // row r sits at position `above` among the chosen rows.
            let sign_flip = (k as u32 - above) % 2 == 1;
            let mut term = m.times(entry);
            if sign_flip {
                term = term.negated();
            }
            let slot = &mut minors[mask | (1 << r)];
            *slot = Some(match slot.take() {
                Some(acc) => acc.plus(&term),
                None => term,
            });
        }
    }
    minors[(1 << n) - 1]
        .take()
        .unwrap_or_else(|| cols[0][0].zero_like())
}
