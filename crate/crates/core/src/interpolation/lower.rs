//! Dual lower bound on the interpolated norm: the dual norm of the
//! interpolated pair is at most the geometric mean of the endpoint dual
//! norms, so max_theta <x, theta> / (h_K^{1-lambda} h_T^lambda) is a valid
//! lower bound on ||x||_lambda.

use crate::error::{GeomError, Result};
use crate::geometry::body::ConvexBody;
use crate::geometry::grid::DirectionGrid;
use crate::geometry::{ops, vector};
use crate::logmean;

/// Lower bound from precomputed support tables (grid order).
pub fn interp_norm_lower_from_tables(
    hk: &[f64],
    ht: &[f64],
    lambda: f64,
    x: &[f64],
    grid: &DirectionGrid<f64>,
) -> Result<f64> {
    if hk.len() != grid.directions.len() || ht.len() != grid.directions.len() {
        return Err(GeomError::DimensionMismatch {
            expected: grid.directions.len(),
            got: hk.len().min(ht.len()),
        });
    }
    let mut best = 0.0f64;
    for ((theta, a), b) in grid.directions.iter().zip(hk).zip(ht) {
        let pairing = if grid.orbit {
            // one orbit representative stands for the whole rotated circle of
            // directions; the pairing the bound supports there is |<z, w>|_C
            vector::herm_abs(x, theta)
        } else {
            vector::dot(x, theta)
        };
        let bound = logmean::geometric_mean(*a, *b, lambda);
        if !(bound > 0.0) {
            return Err(GeomError::Degenerate("support bound not positive".into()));
        }
        best = best.max(pairing / bound);
    }
    Ok(best)
}

/// max over grid directions theta of <x, theta> / (h_K(theta)^{1-lambda}
/// h_T(theta)^lambda). Always a valid lower bound on ||x||_lambda; equals the
/// gauge of the finite-direction outer logarithmic mean at x.
pub fn interp_norm_lower(
    k: &ConvexBody<f64>,
    t: &ConvexBody<f64>,
    lambda: f64,
    x: &[f64],
    grid: &DirectionGrid<f64>,
) -> Result<f64> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(GeomError::InvalidParameter(format!(
            "lambda must lie in [0,1], got {lambda}"
        )));
    }
    if k.dim() != grid.dim() || t.dim() != grid.dim() || x.len() != grid.dim() {
        return Err(GeomError::DimensionMismatch {
            expected: grid.dim(),
            got: k.dim(),
        });
    }
    let hk = ops::support_table(k, grid)?;
    let ht = ops::support_table(t, grid)?;
    interp_norm_lower_from_tables(&hk, &ht, lambda, x, grid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interpolation::closed::{interp_norm_closed, ClosedFamily};
    use approx::assert_relative_eq;

    #[test]
    fn endpoint_recovers_grid_gauge_of_k() {
        // K's maximizing direction for an axis point is the axis itself,
        // present in the 4D grid, so the lower bound equals the gauge exactly
        let k = ConvexBody::<f64>::euclidean_ball(4).unwrap();
        let t = ConvexBody::lp_ball(1.0, vec![1.0, 1.0], true).unwrap();
        let grid = DirectionGrid::sphere_4d(2000).unwrap();
        let x = [0.0, 0.0, 2.0, 0.0];
        let l = interp_norm_lower(&k, &t, 0.0, &x, &grid).unwrap();
        assert_relative_eq!(l, 2.0, epsilon = 1e-12);
        // the bound never exceeds the true gauge
        assert!(l <= ops::gauge(&k, &x).unwrap() + 1e-12);
    }

    #[test]
    fn l1_linf_midpoint_lower_bound_stays_below_calderon_value() {
        let k = ConvexBody::lp_ball(1.0, vec![1.0, 1.0], true).unwrap();
        let t = ConvexBody::lp_ball(f64::INFINITY, vec![1.0, 1.0], true).unwrap();
        let fam = ClosedFamily::LpPair {
            p0: 1.0,
            p1: f64::INFINITY,
            weights: vec![1.0, 1.0],
        };
        let grid = DirectionGrid::sphere_4d(4000).unwrap();
        let mut rng = crate::volume::rng::SplitMix64::keyed(42, 0);
        for _ in 0..20 {
            let x: Vec<f64> = (0..4).map(|_| rng.next_symmetric()).collect();
            let truth = interp_norm_closed(&fam, 0.5, &x).unwrap();
            let l = interp_norm_lower(&k, &t, 0.5, &x, &grid).unwrap();
            assert!(l <= truth + 1e-9, "lower {l} exceeds closed form {truth}");
            assert!(l >= 0.5 * truth, "lower {l} far below closed form {truth}");
        }
    }

    #[test]
    fn axis_point_lower_bound_is_tight_for_l1_linf() {
        // theta = e_1 is in the grid; h_K(e_1) = h_T(e_1) = 1, so the bound
        // attains the Calderon value 1 exactly
        let k = ConvexBody::lp_ball(1.0, vec![1.0, 1.0], true).unwrap();
        let t = ConvexBody::lp_ball(f64::INFINITY, vec![1.0, 1.0], true).unwrap();
        let grid = DirectionGrid::sphere_4d(2000).unwrap();
        let l = interp_norm_lower(&k, &t, 0.5, &[1.0, 0.0, 0.0, 0.0], &grid).unwrap();
        assert_relative_eq!(l, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn orbit_grid_uses_modulus_pairing() {
        // for the Euclidean ball pair the bound is sup over reps of
        // |<x, rep>|_C which the axis representative makes exactly ||x||
        let b = ConvexBody::<f64>::euclidean_ball(4).unwrap();
        let grid = DirectionGrid::hopf_orbit(512).unwrap();
        let x = [0.6, 0.8, 0.0, 0.0]; // unit modulus in the first block
        let l = interp_norm_lower(&b, &b, 0.5, &x, &grid).unwrap();
        assert_relative_eq!(l, 1.0, epsilon = 1e-12);
    }
}
