//! Closed-form volumes for builtin bodies, used for calibration and for the
//! exact sides of inequality checks.

use statrs::function::gamma::gamma;

use crate::error::{GeomError, Result};
use crate::geometry::body::ConvexBody;
use crate::volume::estimate::{VolumeEstimate, VolumeMethod};

/// Volume of the Euclidean unit ball in R^d.
pub fn ball_volume(d: usize) -> f64 {
    std::f64::consts::PI.powf(d as f64 / 2.0) / gamma(1.0 + d as f64 / 2.0)
}

/// Closed-form volume where one exists: l_p balls (real and complex, via the
/// Dirichlet integral) and ellipsoids (determinant formula). Other
/// representations return `Unsupported`; callers fall back to Monte Carlo.
pub fn volume_analytic(body: &ConvexBody<f64>) -> Result<VolumeEstimate> {
    match body {
        ConvexBody::LpBall { p, weights, complex } => {
            let n = weights.len();
            let d = 2 * n;
            // each weight scales one complex coordinate pair by 1/w
            let weight_factor: f64 = weights.iter().map(|w| w.powi(-2)).product();
            let value = if *complex {
                // {sum (w_j |z_j|)^p <= 1}: polar coordinates per complex
                // coordinate give (2 pi)^n integral of prod r_j over
                // {sum r_j^p <= 1}, a Dirichlet integral
                if p.is_infinite() {
                    std::f64::consts::PI.powi(n as i32)
                } else {
                    std::f64::consts::PI.powi(n as i32) * gamma(1.0 + 2.0 / p).powi(n as i32)
                        / gamma(1.0 + d as f64 / p)
                }
            } else {
                // standard real l_p ball in R^d
                if p.is_infinite() {
                    2.0_f64.powi(d as i32)
                } else {
                    2.0_f64.powi(d as i32) * gamma(1.0 + 1.0 / p).powi(d as i32)
                        / gamma(1.0 + d as f64 / p)
                }
            };
            Ok(VolumeEstimate::exact(
                value * weight_factor,
                VolumeMethod::Analytic,
            ))
        }
        ConvexBody::HermitianEllipsoid { matrix, .. } => {
            let det = matrix.det()?;
            Ok(VolumeEstimate::exact(
                ball_volume(matrix.dim) / det.sqrt(),
                VolumeMethod::Analytic,
            ))
        }
        other => Err(GeomError::Unsupported(format!(
            "no closed-form volume for {}",
            other.kind_name()
        ))),
    }
}
