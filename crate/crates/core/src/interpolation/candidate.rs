//! Analytic candidate functions on the strip {0 <= Re z <= 1}:
//!   f(z) = e^{eps (z-lambda)^2} sum_k v_k e^{sigma k (z-lambda)},
//! with complex-vector coefficients v_k. Any such f with f(lambda) = x
//! certifies an upper bound ||f||_F >= ||x||_lambda, where ||f||_F is the
//! larger of the two boundary sups.

use crate::error::{GeomError, Result};
use crate::geometry::body::ConvexBody;
use crate::geometry::ops;

pub const DEFAULT_SIGMA: f64 = 1.0;
pub const DEFAULT_EPSILON: f64 = 0.05;
pub const DEFAULT_M: usize = 3;
pub const T_MAX: f64 = 8.0;
pub const T_GRID: usize = 129;

/// f(z) = e^{eps (z-lambda)^2} sum_{k=-m..m} v_k e^{sigma k (z-lambda)}.
/// Coefficients are interleaved real vectors in R^{2n} standing for C^n.
#[derive(Debug, Clone)]
pub struct AnalyticCandidate {
    pub lambda: f64,
    pub epsilon: f64,
    pub sigma: f64,
    pub m: usize,
    /// 2m+1 coefficient vectors, index k+m for k = -m..m.
    pub coeffs: Vec<Vec<f64>>,
}

impl AnalyticCandidate {
    /// The single-term candidate f(z) = e^{eps(z-lambda)^2} x, the
    /// deterministic optimizer start.
    pub fn single_term(lambda: f64, epsilon: f64, sigma: f64, m: usize, x: &[f64]) -> Self {
        let mut coeffs = vec![vec![0.0; x.len()]; 2 * m + 1];
        coeffs[m] = x.to_vec();
        Self {
            lambda,
            epsilon,
            sigma,
            m,
            coeffs,
        }
    }

    pub fn dim(&self) -> usize {
        self.coeffs[0].len()
    }

    /// f(lambda) = sum_k v_k (the affine constraint the optimizer maintains).
    pub fn value_at_lambda(&self) -> Vec<f64> {
        let mut acc = vec![0.0; self.dim()];
        for v in &self.coeffs {
            for (a, b) in acc.iter_mut().zip(v) {
                *a += *b;
            }
        }
        acc
    }

    /// f(side + i t) as an interleaved real vector, for side in {0, 1}.
    pub fn boundary_value(&self, side: f64, t: f64) -> Vec<f64> {
        let a = side - self.lambda;
        // e^{eps w^2} with w = a + it: modulus e^{eps(a^2 - t^2)}, phase 2 eps a t
        let damp = (self.epsilon * (a * a - t * t)).exp();
        let base_phase = 2.0 * self.epsilon * a * t;
        let dim = self.dim();
        let mut acc = vec![0.0; dim];
        for (idx, v) in self.coeffs.iter().enumerate() {
            let k = idx as f64 - self.m as f64;
            // e^{sigma k w}: modulus e^{sigma k a}, phase sigma k t
            let modulus = damp * (self.sigma * k * a).exp();
            let phase = base_phase + self.sigma * k * t;
            let (re, im) = (modulus * phase.cos(), modulus * phase.sin());
            for j in 0..dim / 2 {
                let (vr, vi) = (v[2 * j], v[2 * j + 1]);
                acc[2 * j] += re * vr - im * vi;
                acc[2 * j + 1] += im * vr + re * vi;
            }
        }
        acc
    }
}

/// Diagnostics from a certified boundary-norm evaluation.
#[derive(Debug, Clone, Default)]
pub struct BoundaryDiagnostics {
    pub boundary_evaluations: usize,
    /// Tail term added to each side's grid sup (from the Gaussian damping
    /// beyond |t| = T_MAX).
    pub tail0: f64,
    pub tail1: f64,
}

/// ||f||_F = max over the two boundary lines of the sup of the endpoint
/// gauge. Each side's sup is the larger of the symmetric t-grid maximum on
/// |t| <= T_MAX and the analytic tail bound valid for all |t| > T_MAX. The
/// grid gap on |t| <= T_MAX is the one uncertified approximation (recorded,
/// not hidden).
pub fn boundary_norm(
    cand: &AnalyticCandidate,
    body0: &ConvexBody<f64>,
    body1: &ConvexBody<f64>,
) -> Result<(f64, BoundaryDiagnostics)> {
    if cand.epsilon < 0.0 {
        return Err(GeomError::InvalidParameter(
            "damping epsilon must be nonnegative".into(),
        ));
    }
    let mut diag = BoundaryDiagnostics::default();
    let mut sups = [0.0f64; 2];
    for (s, body) in [(0.0, body0), (1.0, body1)] {
        let mut sup = 0.0f64;
        for i in 0..T_GRID {
            let t = T_MAX * (2.0 * i as f64 / (T_GRID - 1) as f64 - 1.0);
            let v = cand.boundary_value(s, t);
            sup = sup.max(ops::gauge(body, &v)?);
            diag.boundary_evaluations += 1;
        }
        // tail: gauge(f) <= e^{eps(a^2 - t^2)} sum_k e^{sigma k a} gauge(v_k)
        let a = s - cand.lambda;
        let mut coeff_sum = 0.0;
        for (idx, v) in cand.coeffs.iter().enumerate() {
            let k = idx as f64 - cand.m as f64;
            coeff_sum += (cand.sigma * k * a).exp() * ops::gauge(body, v)?;
        }
        let tail = (cand.epsilon * (a * a - T_MAX * T_MAX)).exp() * coeff_sum;
        // sup over the full line = max of the sups over |t| <= T_MAX and
        // |t| > T_MAX; the tail bound covers the latter
        if s == 0.0 {
            diag.tail0 = tail;
            sups[0] = sup.max(tail);
        } else {
            diag.tail1 = tail;
            sups[1] = sup.max(tail);
        }
    }
    Ok((sups[0].max(sups[1]), diag))
}
