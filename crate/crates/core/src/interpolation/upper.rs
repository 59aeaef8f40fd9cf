//! Variational upper bound on the interpolated norm: deterministic pattern
//! search over analytic-candidate coefficients with the interpolation
//! constraint f(lambda) = x eliminated.

use crate::error::{GeomError, Result};
use crate::geometry::body::ConvexBody;
use crate::geometry::vector;
use crate::interpolation::candidate::{boundary_norm, AnalyticCandidate};

pub const DEFAULT_BUDGET: usize = 40;

/// Certified upper bound with optimizer diagnostics.
#[derive(Debug, Clone)]
pub struct UpperBound {
    pub value: f64,
    pub sweeps: usize,
    pub boundary_evaluations: usize,
    /// True when no candidate improved on the single-term start.
    pub low_quality: bool,
}

/// Upper bound on ||x||_lambda over candidates with exponent counts 1..=m
/// (warm-started, so the result is non-increasing in m and in budget).
///
/// lambda must lie strictly inside (0,1); endpoints are exact gauges and are
/// handled by the sandwich layer.
pub fn interp_norm_upper(
    body0: &ConvexBody<f64>,
    body1: &ConvexBody<f64>,
    lambda: f64,
    x: &[f64],
    m: usize,
    epsilon: f64,
    budget: usize,
) -> Result<UpperBound> {
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(GeomError::InvalidParameter(format!(
            "upper-bound optimizer needs lambda in (0,1), got {lambda}"
        )));
    }
    let scale = vector::norm(x);
    if !(scale > 0.0) {
        return Err(GeomError::ZeroDirection);
    }
    // exact positive homogeneity: optimize the unit-scaled point
    let unit: Vec<f64> = x.iter().map(|v| v / scale).collect();
    let sigma = crate::interpolation::candidate::DEFAULT_SIGMA;

    let mut evals = 0usize;
    let mut sweeps = 0usize;
    let mut best_free: Vec<Vec<f64>> = Vec::new(); // coefficients for k != 0
    let mut best_value = f64::INFINITY;
    let mut initial_value = f64::INFINITY;

    for mm in 1..=m.max(1) {
        // embed the previous optimum (zero-pad the new outer exponents)
        let mut free: Vec<Vec<f64>> = vec![vec![0.0; unit.len()]; 2 * mm];
        let prev = best_free.len() / 2;
        for (i, v) in best_free.iter().enumerate() {
            let k = i as isize - prev as isize + if i >= prev { 1 } else { 0 }; // k != 0
            let slot = (k + mm as isize) as usize;
            let slot = if k > 0 { slot - 1 } else { slot };
            free[slot] = v.clone();
        }
        let eval = |free: &[Vec<f64>], evals: &mut usize| -> Result<f64> {
            let cand = assemble(lambda, epsilon, sigma, mm, &unit, free);
            let (v, d) = boundary_norm(&cand, body0, body1)?;
            *evals += d.boundary_evaluations;
            Ok(v)
        };
        let mut current = eval(&free, &mut evals)?;
        if mm == 1 {
            initial_value = current;
        }
        let mut step = 0.25;
        let mut local_sweeps = 0;
        while step > 1e-3 && local_sweeps < budget {
            let mut improved = false;
            for i in 0..free.len() {
                for j in 0..unit.len() {
                    for dir in [step, -step] {
                        free[i][j] += dir;
                        let v = eval(&free, &mut evals)?;
                        if v < current - 1e-15 {
                            current = v;
                            improved = true;
                        } else {
                            free[i][j] -= dir;
                        }
                    }
                }
            }
            if !improved {
                step *= 0.5;
            }
            local_sweeps += 1;
        }
        sweeps += local_sweeps;
        if current < best_value {
            best_value = current;
            best_free = free;
        }
    }
    Ok(UpperBound {
        value: best_value * scale,
        sweeps,
        boundary_evaluations: evals,
        low_quality: best_value >= initial_value - 1e-15 && m > 0,
    })
}

fn assemble(
    lambda: f64,
    epsilon: f64,
    sigma: f64,
    m: usize,
    x: &[f64],
    free: &[Vec<f64>],
) -> AnalyticCandidate {
    // free holds v_k for k = -m..-1, 1..m; v_0 = x - sum(free)
    let mut coeffs = vec![vec![0.0; x.len()]; 2 * m + 1];
    let mut v0 = x.to_vec();
    for (i, v) in free.iter().enumerate() {
        let k = if i < m { i } else { i + 1 }; // skip the center slot
        coeffs[k] = v.clone();
        for (a, b) in v0.iter_mut().zip(v) {
            *a -= *b;
        }
    }
    coeffs[m] = v0;
    AnalyticCandidate {
        lambda,
        epsilon,
        sigma,
        m,
        coeffs,
    }
}
