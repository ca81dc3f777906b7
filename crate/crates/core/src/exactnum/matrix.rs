use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::rat::{fmt_rat, int, parse_rat, sign_of, Rat};
use crate::error::{Error, Result};

/// Dense square-or-rectangular rational matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    a: Vec<Rat>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, a: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.a[i * n + i] = Rat::one();
        }
        m
    }

    pub fn diag(d: &[Rat]) -> Self {
        let n = d.len();
        let mut m = Self::zeros(n, n);
        for (i, x) in d.iter().enumerate() {
            m.a[i * n + i] = x.clone();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Rat>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix { rows: r, cols: c, a: rows.iter().flatten().cloned().collect() }
    }

    pub fn from_columns(cols: &[Vec<Rat>]) -> Self {
        Self::from_rows(cols).transpose()
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let rows: Vec<Vec<Rat>> = rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
        Self::from_rows(&rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.a[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.a[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<Rat> {
        self.a[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix shapes do not chain");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let x = self.get(i, k);
                if x.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let y = other.get(k, j);
                    if !y.is_zero() {
                        out.a[i * other.cols + j] += x * y;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(Rat::zero(), |acc, j| acc + self.get(i, j) * &v[j])
            })
            .collect()
    }

    pub fn scale(&self, c: &Rat) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, a: self.a.iter().map(|x| x * c).collect() }
    }

    /// Row-echelon form, rank, and the signed product of the pivots.
    fn eliminate(&self) -> (Matrix, usize, Rat) {
        let mut m = self.clone();
        let mut det_factor = Rat::one();
        let mut rank = 0;
        for col in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(p) = (rank..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            if p != rank {
                for j in 0..m.cols {
                    m.a.swap(p * m.cols + j, rank * m.cols + j);
                }
                det_factor = -det_factor;
            }
            let piv = m.get(rank, col).clone();
            det_factor *= &piv;
            for r in rank + 1..m.rows {
                let f = m.get(r, col) / &piv;
                if f.is_zero() {
                    continue;
                }
                for j in col..m.cols {
                    let sub = &f * m.get(rank, j);
                    m.a[r * m.cols + j] -= sub;
                }
            }
            rank += 1;
        }
        (m, rank, det_factor)
    }

    pub fn rank(&self) -> usize {
        self.eliminate().1
    }

    /// Reduced row-echelon form and the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            for j in 0..m.cols {
                m.a.swap(p * m.cols + j, row * m.cols + j);
            }
            let piv = m.get(row, col).clone();
            for j in 0..m.cols {
                let x = m.get(row, j) / &piv;
                m.set(row, j, x);
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let f = m.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..m.cols {
                    let sub = &f * m.get(row, j);
                    m.a[r * m.cols + j] -= sub;
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    /// Basis of `{x : self * x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Rat>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![Rat::zero(); self.cols];
                x[f] = Rat::one();
                for (i, &p) in pivots.iter().enumerate() {
                    x[p] = -r.get(i, f).clone();
                }
                x
            })
            .collect()
    }

    pub fn det(&self) -> Rat {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let (_, rank, d) = self.eliminate();
        if rank < self.rows {
            Rat::zero()
        } else {
            d
        }
    }

    pub fn det_sign(&self) -> i8 {
        sign_of(&self.det())
    }

    /// Solves `self * x = b` for square invertible `self`.
    pub fn solve(&self, b: &[Rat]) -> Result<Vec<Rat>> {
        let n = self.rows;
        if !self.is_square() || b.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} system with right-hand side of length {}",
                self.rows,
                self.cols,
                b.len()
            )));
        }
        let mut aug = Matrix::zeros(n, n + 1);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n, b[i].clone());
        }
        let (m, rank, _) = aug.eliminate();
        if rank < n || (0..n).any(|i| m.get(i, i).is_zero()) {
            return Err(Error::SingularMatrix(self.to_string()));
        }
        let mut x = vec![Rat::zero(); n];
        for i in (0..n).rev() {
            let mut s = m.get(i, n).clone();
            for j in i + 1..n {
                s -= m.get(i, j) * &x[j];
            }
            x[i] = s / m.get(i, i);
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        let n = self.rows;
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = vec![Rat::zero(); n];
            e[j] = Rat::one();
            cols.push(self.solve(&e)?);
        }
        Ok(Matrix::from_columns(&cols))
    }

    /// Ok(()) when the matrix is square and invertible.
    pub fn check_invertible(&self) -> Result<()> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "expected a square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        if self.det().is_zero() {
            return Err(Error::SingularMatrix(self.to_string()));
        }
        Ok(())
    }

    /// Adjugate of a square matrix: `adj * self = det * I`.
    pub fn adjugate(&self) -> Matrix {
        let n = self.rows;
        assert!(self.is_square());
        let mut adj = Matrix::zeros(n, n);
        if n == 1 {
            adj.set(0, 0, Rat::one());
            return adj;
        }
        for i in 0..n {
            for j in 0..n {
                // cofactor C_{ji} goes to adj[i][j]
                let minor = self.minor(j, i);
                let c = minor.det();
                adj.set(i, j, if (i + j) % 2 == 0 { c } else { -c });
            }
        }
        adj
    }

    fn minor(&self, skip_r: usize, skip_c: usize) -> Matrix {
        let rows: Vec<Vec<Rat>> = (0..self.rows)
            .filter(|&i| i != skip_r)
            .map(|i| {
                (0..self.cols)
                    .filter(|&j| j != skip_c)
                    .map(|j| self.get(i, j).clone())
                    .collect()
            })
            .collect();
        Matrix::from_rows(&rows)
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.to_rows().iter().map(|r| r.iter().map(fmt_rat).collect()).collect()
    }

    pub fn parse(rows: &[Vec<String>]) -> Result<Matrix> {
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != c) {
            return Err(Error::Parse("ragged matrix".into()));
        }
        let parsed: Result<Vec<Vec<Rat>>> =
            rows.iter().map(|r| r.iter().map(|s| parse_rat(s)).collect()).collect();
        Ok(Matrix::from_rows(&parsed?))
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .to_strings()
            .into_iter()
            .map(|r| format!("[{}]", r.join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Matrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<super::rat::RatStr>>::deserialize(d)?;
        let rows: Vec<Vec<Rat>> = rows.into_iter().map(|r| r.into_iter().map(|x| x.0).collect()).collect();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != c) {
            return Err(serde::de::Error::custom("ragged matrix"));
        }
        Ok(Matrix::from_rows(&rows))
    }
}
