//! Small dense symmetric matrices: Cholesky factorization, determinant,
//! inverse, quadratic forms. Dimensions here are at most 8, so the plain
//! O(n^3) algorithms are exact enough and dependency-free.

use crate::error::{GeomError, Result};
use crate::scalar::Scalar;

/// Dense symmetric matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix<S> {
    pub dim: usize,
    pub data: Vec<S>,
}

impl<S: Scalar> SymMatrix<S> {
    pub fn from_rows(dim: usize, data: Vec<S>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(GeomError::InvalidParameter(format!(
                "matrix data length {} != {}^2",
                data.len(),
                dim
            )));
        }
        let m = Self { dim, data };
        let tol = S::from_f64c(1e-10);
        for i in 0..dim {
            for j in (i + 1)..dim {
                let d = (m.at(i, j) - m.at(j, i)).abs();
                let s = S::one() + m.at(i, j).abs();
                if d > tol * s {
                    return Err(GeomError::NotSpd);
                }
            }
        }
        Ok(m)
    }

    pub fn identity(dim: usize) -> Self {
        let mut data = vec![S::zero(); dim * dim];
        for i in 0..dim {
            data[i * dim + i] = S::one();
        }
        Self { dim, data }
    }

    pub fn diagonal(diag: &[S]) -> Self {
        let dim = diag.len();
        let mut m = Self::identity(dim);
        for i in 0..dim {
            m.data[i * dim + i] = diag[i];
        }
        m
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> S {
        self.data[i * self.dim + j]
    }

    /// Lower-triangular Cholesky factor; fails if not positive definite.
    pub fn cholesky(&self) -> Result<Vec<S>> {
        let n = self.dim;
        let mut l = vec![S::zero(); n * n];
        for i in 0..n {
            for j in 0..=i {
                let mut sum = self.at(i, j);
                for k in 0..j {
                    sum = sum - l[i * n + k] * l[j * n + k];
                }
                if i == j {
                    if sum <= S::zero() {
                        return Err(GeomError::NotSpd);
                    }
                    l[i * n + i] = sum.sqrt();
                } else {
                    l[i * n + j] = sum / l[j * n + j];
                }
            }
        }
        Ok(l)
    }

    pub fn is_spd(&self) -> bool {
        self.cholesky().is_ok()
    }

    pub fn det(&self) -> Result<S> {
        let l = self.cholesky()?;
        let n = self.dim;
        let mut d = S::one();
        for i in 0..n {
            d = d * l[i * n + i];
        }
        Ok(d * d)
    }

    /// Solves A x = b via the Cholesky factor.
    pub fn solve(&self, b: &[S]) -> Result<Vec<S>> {
        let l = self.cholesky()?;
        let n = self.dim;
        let mut y = b.to_vec();
        for i in 0..n {
            for k in 0..i {
                let t = l[i * n + k] * y[k];
                y[i] = y[i] - t;
            }
            y[i] = y[i] / l[i * n + i];
        }
        for i in (0..n).rev() {
            for k in (i + 1)..n {
                let t = l[k * n + i] * y[k];
                y[i] = y[i] - t;
            }
            y[i] = y[i] / l[i * n + i];
        }
        Ok(y)
    }

    pub fn inverse(&self) -> Result<SymMatrix<S>> {
        let n = self.dim;
        let mut data = vec![S::zero(); n * n];
        for j in 0..n {
            let mut e = vec![S::zero(); n];
            e[j] = S::one();
            let col = self.solve(&e)?;
            for i in 0..n {
                data[i * n + j] = col[i];
            }
        }
        // symmetrize against rounding
        for i in 0..n {
            for j in (i + 1)..n {
                let avg = (data[i * n + j] + data[j * n + i]) / S::from_f64c(2.0);
                data[i * n + j] = avg;
                data[j * n + i] = avg;
            }
        }
        Ok(SymMatrix { dim: n, data })
    }

    /// Quadratic form x^T A x.
    pub fn quad(&self, x: &[S]) -> S {
        let n = self.dim;
        let mut acc = S::zero();
        for i in 0..n {
            let mut row = S::zero();
            for j in 0..n {
                row = row + self.at(i, j) * x[j];
            }
            acc = acc + x[i] * row;
        }
        acc
    }

    /// Whether the matrix commutes with the blockwise complex rotation, i.e.
    /// every 2x2 complex block has the form [[a, -b], [b, a]].
    pub fn commutes_with_complex_structure(&self, tol: S) -> bool {
        let n = self.dim;
        if n % 2 != 0 {
            return false;
        }
        let scale = self
            .data
            .iter()
            .fold(S::zero(), |m, v| if v.abs() > m { v.abs() } else { m });
        let tol = tol * (S::one() + scale);
        for bi in 0..n / 2 {
            for bj in 0..n / 2 {
                let (i, j) = (2 * bi, 2 * bj);
                let a = self.at(i, j) - self.at(i + 1, j + 1);
                let b = self.at(i, j + 1) + self.at(i + 1, j);
                if a.abs() > tol || b.abs() > tol {
                    return false;
                }
            }
        }
        true
    }
}
