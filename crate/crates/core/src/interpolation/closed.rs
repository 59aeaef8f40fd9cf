//! Closed-form interpolated norms used as oracles: the l_p scale (exponent
//! interpolation) and the Hilbertian scale (matrix geodesic). Both are
//! standard interpolation facts, used here for calibration.

use nalgebra::DMatrix;

use crate::error::{GeomError, Result};
use crate::geometry::body::ConvexBody;
use crate::geometry::linalg::SymMatrix;
use crate::geometry::ops;

/// A pair of spaces whose complex interpolation norm has a closed form.
#[derive(Debug, Clone)]
pub enum ClosedFamily {
    /// Weighted complex l_{p_0} and l_{p_1} norms with shared weights:
    /// interpolation gives l_{p_lambda} with 1/p_lambda =
    /// (1-lambda)/p_0 + lambda/p_1.
    LpPair {
        p0: f64,
        p1: f64,
        weights: Vec<f64>,
    },
    /// Norms sqrt(<x, A_i x>) with SPD matrices commuting with the complex
    /// structure: interpolation follows the geodesic
    /// A_lambda = A_0^{1/2} (A_0^{-1/2} A_1 A_0^{-1/2})^lambda A_0^{1/2}.
    HermitianPair {
        a0: SymMatrix<f64>,
        a1: SymMatrix<f64>,
    },
}

/// Interpolated l_p exponent: 1/p_lambda = (1-lambda)/p_0 + lambda/p_1.
pub fn calderon_exponent(p0: f64, p1: f64, lambda: f64) -> f64 {
    let inv = (1.0 - lambda) / p0 + lambda / p1; // 1/inf = 0
    if inv <= 0.0 {
        f64::INFINITY
    } else {
        1.0 / inv
    }
}

fn to_dmatrix(a: &SymMatrix<f64>) -> DMatrix<f64> {
    DMatrix::from_row_slice(a.dim, a.dim, &a.data)
}

/// A^t for symmetric positive definite A, via eigendecomposition.
fn sym_power(a: &DMatrix<f64>, t: f64) -> Result<DMatrix<f64>> {
    let eig = a.clone().symmetric_eigen();
    if eig.eigenvalues.iter().any(|l| *l <= 0.0) {
        return Err(GeomError::NotSpd);
    }
    let d = DMatrix::from_diagonal(&eig.eigenvalues.map(|l| l.powf(t)));
    Ok(&eig.eigenvectors * d * eig.eigenvectors.transpose())
}

/// The geodesic midpoint family A_lambda between two SPD matrices.
pub fn hermitian_geodesic(
    a0: &SymMatrix<f64>,
    a1: &SymMatrix<f64>,
    lambda: f64,
) -> Result<SymMatrix<f64>> {
    if a0.dim != a1.dim {
        return Err(GeomError::DimensionMismatch {
            expected: a0.dim,
            got: a1.dim,
        });
    }
    if !a0.is_spd() || !a1.is_spd() {
        return Err(GeomError::NotSpd);
    }
    let m0 = to_dmatrix(a0);
    let m1 = to_dmatrix(a1);
    let s = sym_power(&m0, 0.5)?;
    let si = sym_power(&m0, -0.5)?;
    let mid = sym_power(&(&si * m1 * &si), lambda)?;
    let al = &s * mid * &s;
    // symmetrize against rounding before re-wrapping
    let n = a0.dim;
    let mut data = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            data[i * n + j] = (al[(i, j)] + al[(j, i)]) / 2.0;
        }
    }
    SymMatrix::from_rows(n, data)
}

/// Closed-form interpolated norm at x.
pub fn interp_norm_closed(family: &ClosedFamily, lambda: f64, x: &[f64]) -> Result<f64> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(GeomError::InvalidParameter(format!(
            "lambda must lie in [0,1], got {lambda}"
        )));
    }
    match family {
        ClosedFamily::LpPair { p0, p1, weights } => {
            let p = calderon_exponent(*p0, *p1, lambda);
            let ball = ConvexBody::lp_ball(p, weights.clone(), true)?;
            ops::gauge(&ball, x)
        }
        ClosedFamily::HermitianPair { a0, a1 } => {
            let al = hermitian_geodesic(a0, a1, lambda)?;
            Ok(al.quad(x).max(0.0).sqrt())
        }
    }
}
