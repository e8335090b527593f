//! Dense square matrices over `Q`.

use std::ops::Mul;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::padic::DiagonalForm;
use crate::rational::{self, Rational};

/// A square matrix with exact rational entries, serialized as an array of
/// rows of `"num/den"` strings.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<String>>", into = "Vec<Vec<String>>")]
pub struct QMatrix {
    rows: Vec<Vec<Rational>>,
}

impl TryFrom<Vec<Vec<String>>> for QMatrix {
    type Error = Error;
    fn try_from(rows: Vec<Vec<String>>) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|s| rational::parse(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        QMatrix::new(rows)
    }
}

impl From<QMatrix> for Vec<Vec<String>> {
    fn from(m: QMatrix) -> Self {
        m.rows.iter().map(|r| r.iter().map(rational::format).collect()).collect()
    }
}

impl QMatrix {
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::domain("matrix must be square and nonempty"));
        }
        Ok(QMatrix { rows })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        QMatrix::new(rows.iter().map(|r| r.iter().map(|&a| rational::int(a)).collect()).collect())
    }

    pub fn identity(n: usize) -> Self {
        QMatrix::diagonal(vec![Rational::one(); n])
    }

    pub fn diagonal(d: Vec<Rational>) -> Self {
        let n = d.len();
        let mut rows = vec![vec![Rational::zero(); n]; n];
        for (i, a) in d.into_iter().enumerate() {
            rows[i][i] = a;
        }
        QMatrix { rows }
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.rows[i][j] = v;
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn transpose(&self) -> Self {
        let n = self.n();
        let rows = (0..n).map(|i| (0..n).map(|j| self.rows[j][i].clone()).collect()).collect();
        QMatrix { rows }
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.n();
        (0..n).all(|i| (0..i).all(|j| self.rows[i][j] == self.rows[j][i]))
    }

    pub fn is_diagonal(&self) -> bool {
        let n = self.n();
        (0..n).all(|i| (0..n).all(|j| i == j || self.rows[i][j].is_zero()))
    }

    /// `Uᵀ · self · U`.
    pub fn congruence(&self, u: &QMatrix) -> QMatrix {
        &(&u.transpose() * self) * u
    }

    pub fn det(&self) -> Rational {
        let n = self.n();
        let mut a = self.rows.clone();
        let mut det = Rational::one();
        for k in 0..n {
            let Some(piv) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return Rational::zero();
            };
            if piv != k {
                a.swap(piv, k);
                det = -det;
            }
            det *= &a[k][k];
            for i in k + 1..n {
                if a[i][k].is_zero() {
                    continue;
                }
                let f = &a[i][k] / &a[k][k];
                for j in k..n {
                    let t = &f * &a[k][j];
                    a[i][j] -= t;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<QMatrix> {
        let n = self.n();
        let mut a = self.rows.clone();
        let mut inv = QMatrix::identity(n).rows;
        for k in 0..n {
            let piv = (k..n)
                .find(|&i| !a[i][k].is_zero())
                .ok_or_else(|| Error::domain("matrix is singular"))?;
            a.swap(piv, k);
            inv.swap(piv, k);
            let d = a[k][k].clone();
            for j in 0..n {
                a[k][j] /= &d;
                inv[k][j] /= &d;
            }
            for i in 0..n {
                if i == k || a[i][k].is_zero() {
                    continue;
                }
                let f = a[i][k].clone();
                for j in 0..n {
                    let t = &f * &a[k][j];
                    a[i][j] -= t;
                    let t = &f * &inv[k][j];
                    inv[i][j] -= t;
                }
            }
        }
        Ok(QMatrix { rows: inv })
    }

    /// Diagonalizes a nonsingular symmetric matrix by congruence over `Q`.
    pub fn diagonalize(&self) -> Result<(DiagonalForm, QMatrix)> {
        if !self.is_symmetric() {
            return Err(Error::domain("matrix is not symmetric"));
        }
        let n = self.n();
        let mut a = self.clone();
        let mut u = QMatrix::identity(n);
        for k in 0..n {
            if a.rows[k][k].is_zero() {
                if let Some(j) = (k + 1..n).find(|&j| !a.rows[j][j].is_zero()) {
                    a.swap_basis(k, j);
                    u.swap_cols(k, j);
                } else if let Some(j) = (k + 1..n).find(|&j| !a.rows[k][j].is_zero()) {
                    a.add_basis(k, j, &Rational::one());
                    u.add_col(k, j, &Rational::one());
                } else {
                    return Err(Error::domain("matrix is singular"));
                }
            }
            for j in k + 1..n {
                if a.rows[j][k].is_zero() {
                    continue;
                }
                let c = -(&a.rows[j][k] / &a.rows[k][k]);
                a.add_basis(j, k, &c);
                u.add_col(j, k, &c);
            }
        }
        let d = (0..n).map(|i| a.rows[i][i].clone()).collect();
        Ok((DiagonalForm::new(d)?, u))
    }

    /// Basis change `e_i <-> e_j` applied as a congruence.
    pub(crate) fn swap_basis(&mut self, i: usize, j: usize) {
        self.rows.swap(i, j);
        self.swap_cols(i, j);
    }

    pub(crate) fn swap_cols(&mut self, i: usize, j: usize) {
        for r in &mut self.rows {
            r.swap(i, j);
        }
    }

    /// `col_i += c * col_j`.
    pub(crate) fn add_col(&mut self, i: usize, j: usize, c: &Rational) {
        for r in &mut self.rows {
            let t = c * &r[j];
            r[i] += t;
        }
    }

    /// `row_i += c * row_j`.
    pub(crate) fn add_row(&mut self, i: usize, j: usize, c: &Rational) {
        let src = self.rows[j].clone();
        for (x, y) in self.rows[i].iter_mut().zip(&src) {
            *x += c * y;
        }
    }

    /// Basis change `e_i <- e_i + c e_j` applied as a congruence.
    pub(crate) fn add_basis(&mut self, i: usize, j: usize, c: &Rational) {
        self.add_col(i, j, c);
        self.add_row(i, j, c);
    }

    pub fn scale(&self, c: &Rational) -> QMatrix {
        QMatrix { rows: self.rows.iter().map(|r| r.iter().map(|x| x * c).collect()).collect() }
    }
}

impl Mul for &QMatrix {
    type Output = QMatrix;
    fn mul(self, rhs: &QMatrix) -> QMatrix {
        let n = self.n();
        assert_eq!(n, rhs.n(), "dimension mismatch");
        let mut rows = vec![vec![Rational::zero(); n]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            for k in 0..n {
                if self.rows[i][k].is_zero() {
                    continue;
                }
                for j in 0..n {
                    row[j] += &self.rows[i][k] * &rhs.rows[k][j];
                }
            }
        }
        QMatrix { rows }
    }
}
