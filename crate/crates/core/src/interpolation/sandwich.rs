//! Certified sandwiches lower <= ||x||_lambda <= upper per probe point, and
//! body proxies bracketing the interpolated unit ball from both sides.

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::geometry::body::ConvexBody;
use crate::geometry::grid::DirectionGrid;
use crate::geometry::ops;
use crate::interpolation::lower::interp_norm_lower_from_tables;
use crate::interpolation::upper::interp_norm_upper;
use crate::logmean;

/// Certified bounds lower <= ||x||_lambda <= upper at one probe point.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NormSandwich {
    pub lambda: f64,
    pub point: Vec<f64>,
    pub lower: f64,
    pub upper: f64,
    pub m: usize,
    pub epsilon: f64,
    pub budget: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostics: Option<SandwichDiagnostics>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SandwichDiagnostics {
    pub boundary_evaluations: usize,
    pub sweeps: usize,
    pub low_quality: bool,
}

impl NormSandwich {
    pub fn gap(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn relative_gap(&self) -> f64 {
        if self.upper > 0.0 {
            self.gap() / self.upper
        } else {
            0.0
        }
    }
}

/// Sandwich at one probe point. Endpoint lambdas return the exact endpoint
/// gauge for both bounds; interior lambdas combine the dual lower bound with
/// the analytic-candidate upper bound.
pub fn norm_sandwich(
    k: &ConvexBody<f64>,
    t: &ConvexBody<f64>,
    lambda: f64,
    x: &[f64],
    grid: &DirectionGrid<f64>,
    m: usize,
    epsilon: f64,
    budget: usize,
) -> Result<NormSandwich> {
    let hk = ops::support_table(k, grid)?;
    let ht = ops::support_table(t, grid)?;
    norm_sandwich_with_tables(k, t, &hk, &ht, lambda, x, grid, m, epsilon, budget)
}

#[allow(clippy::too_many_arguments)]
fn norm_sandwich_with_tables(
    k: &ConvexBody<f64>,
    t: &ConvexBody<f64>,
    hk: &[f64],
    ht: &[f64],
    lambda: f64,
    x: &[f64],
    grid: &DirectionGrid<f64>,
    m: usize,
    epsilon: f64,
    budget: usize,
) -> Result<NormSandwich> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(GeomError::InvalidParameter(format!(
            "lambda must lie in [0,1], got {lambda}"
        )));
    }
    if x.iter().all(|v| *v == 0.0) {
        return Err(GeomError::ZeroDirection);
    }
    let (lower, upper, diagnostics) = if lambda == 0.0 || lambda == 1.0 {
        let g = ops::gauge(if lambda == 0.0 { k } else { t }, x)?;
        (g, g, None)
    } else {
        let lower = interp_norm_lower_from_tables(hk, ht, lambda, x, grid)?;
        let ub = interp_norm_upper(k, t, lambda, x, m, epsilon, budget)?;
        let diag = SandwichDiagnostics {
            boundary_evaluations: ub.boundary_evaluations,
            sweeps: ub.sweeps,
            low_quality: ub.low_quality,
        };
        (lower, ub.value, Some(diag))
    };
    assert!(
        lower <= upper * (1.0 + 1e-12) + 1e-12,
        "sandwich inverted: lower {lower} > upper {upper} (lambda {lambda})"
    );
    Ok(NormSandwich {
        lambda,
        point: x.to_vec(),
        lower,
        upper,
        m,
        epsilon,
        budget,
        diagnostics,
    })
}

/// Per-probe sandwiches plus body proxies bracketing the interpolated unit
/// ball: inner (V-polytope of certified interior points x/upper) and outer
/// (support-sampled superset whose gauge is the dual lower bound).
#[derive(Debug, Clone)]
pub struct SandwichSet {
    pub sandwiches: Vec<NormSandwich>,
    pub inner_proxy: ConvexBody<f64>,
    pub outer_proxy: ConvexBody<f64>,
}

#[allow(clippy::too_many_arguments)]
pub fn c_lambda_sandwich(
    k: &ConvexBody<f64>,
    t: &ConvexBody<f64>,
    lambda: f64,
    probe_points: &[Vec<f64>],
    grid: Arc<DirectionGrid<f64>>,
    m: usize,
    epsilon: f64,
    budget: usize,
) -> Result<SandwichSet> {
    if probe_points.is_empty() {
        return Err(GeomError::InvalidParameter("no probe points".into()));
    }
    let hk = ops::support_table(k, &grid)?;
    let ht = ops::support_table(t, &grid)?;
    let sandwiches: Vec<NormSandwich> = probe_points
        .par_iter()
        .map(|x| norm_sandwich_with_tables(k, t, &hk, &ht, lambda, x, &grid, m, epsilon, budget))
        .collect::<Result<_>>()?;
    // each x/upper is certified inside the unit ball; the norm is even, so
    // the mirrored points are too
    let mut vertices = Vec::with_capacity(2 * sandwiches.len());
    for s in &sandwiches {
        let v: Vec<f64> = s.point.iter().map(|c| c / s.upper).collect();
        let n: Vec<f64> = v.iter().map(|c| -c).collect();
        vertices.push(v);
        vertices.push(n);
    }
    let inner_proxy = ConvexBody::v_polytope(vertices)?;
    // the unit ball satisfies <x, theta> <= bound(theta) on every grid
    // direction, so the bound table is a valid support over-approximation
    let bounds = logmean::bound_table(&hk, &ht, lambda);
    let outer_proxy = ConvexBody::support_sampled(Arc::clone(&grid), bounds)?;
    Ok(SandwichSet {
        sandwiches,
        inner_proxy,
        outer_proxy,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interpolation::candidate::{DEFAULT_EPSILON, DEFAULT_M};
    use crate::interpolation::closed::{interp_norm_closed, ClosedFamily};
    use approx::assert_relative_eq;

    fn grid4() -> Arc<DirectionGrid<f64>> {
        Arc::new(DirectionGrid::sphere_4d(2000).unwrap())
    }

    #[test]
    fn equal_balls_sandwich_collapses_to_euclidean_norm() {
        let b = ConvexBody::<f64>::euclidean_ball(4).unwrap();
        let g = grid4();
        let s =
            norm_sandwich(&b, &b, 0.5, &[0.0, 2.0, 0.0, 0.0], &g, DEFAULT_M, DEFAULT_EPSILON, 20)
                .unwrap();
        assert!(s.lower <= 2.0 + 1e-9 && s.upper >= 2.0 - 1e-9);
        assert_relative_eq!(s.lower, 2.0, epsilon = 1e-9);
        assert!(s.upper <= 2.0 * (DEFAULT_EPSILON / 4.0).exp() + 0.1);
    }

    #[test]
    fn endpoint_sandwich_equals_endpoint_gauge() {
        let k = ConvexBody::lp_ball(1.0, vec![1.0, 1.0], true).unwrap();
        let t = ConvexBody::lp_ball(f64::INFINITY, vec![1.0, 1.0], true).unwrap();
        let g = grid4();
        let x = [0.4, -0.3, 0.2, 0.6];
        for (lam, body) in [(0.0, &k), (1.0, &t)] {
            let s = norm_sandwich(&k, &t, lam, &x, &g, 2, DEFAULT_EPSILON, 5).unwrap();
            let truth = ops::gauge(body, &x).unwrap();
            assert_relative_eq!(s.lower, truth, epsilon = 1e-8);
            assert_relative_eq!(s.upper, truth, epsilon = 1e-8);
        }
    }

    #[test]
    fn l1_linf_sandwich_brackets_calderon_values() {
        let k = ConvexBody::lp_ball(1.0, vec![1.0, 1.0], true).unwrap();
        let t = ConvexBody::lp_ball(f64::INFINITY, vec![1.0, 1.0], true).unwrap();
        let fam = ClosedFamily::LpPair {
            p0: 1.0,
            p1: f64::INFINITY,
            weights: vec![1.0, 1.0],
        };
        let g = grid4();
        let mut rng = crate::volume::rng::SplitMix64::keyed(7, 0);
        for _ in 0..5 {
            let x: Vec<f64> = (0..4).map(|_| rng.next_symmetric()).collect();
            let truth = interp_norm_closed(&fam, 0.5, &x).unwrap();
            let s = norm_sandwich(&k, &t, 0.5, &x, &g, DEFAULT_M, DEFAULT_EPSILON, 25).unwrap();
            assert!(
                s.lower <= truth + 1e-9 && truth <= s.upper + 1e-9,
                "sandwich [{}, {}] misses closed form {}",
                s.lower,
                s.upper,
                truth
            );
        }
    }

    #[test]
    fn hermitian_pair_sandwich_brackets_geodesic_closed_form() {
        use crate::geometry::linalg::SymMatrix;
        let a0 = SymMatrix::identity(4);
        let a1 = SymMatrix::diagonal(&[4.0, 4.0, 1.0, 1.0]);
        let k = ConvexBody::hermitian_ellipsoid(a0.clone(), true).unwrap();
        let t = ConvexBody::hermitian_ellipsoid(a1.clone(), true).unwrap();
        let fam = ClosedFamily::HermitianPair { a0, a1 };
        let g = grid4();
        let x = [0.8, 0.0, 0.5, 0.0];
        let truth = interp_norm_closed(&fam, 0.5, &x).unwrap();
        let s = norm_sandwich(&k, &t, 0.5, &x, &g, DEFAULT_M, DEFAULT_EPSILON, 25).unwrap();
        assert!(s.lower <= truth + 1e-9 && truth <= s.upper + 1e-9);
        // upper within a few percent of the closed form
        assert!(s.upper / truth < 1.08, "upper/truth = {}", s.upper / truth);
    }

    #[test]
    fn proxies_bracket_the_unit_ball() {
        let k = ConvexBody::lp_ball(1.0, vec![1.0, 1.0], true).unwrap();
        let t = ConvexBody::lp_ball(f64::INFINITY, vec![1.0, 1.0], true).unwrap();
        let g = grid4();
        let mut rng = crate::volume::rng::SplitMix64::keyed(11, 0);
        let probes: Vec<Vec<f64>> = (0..12)
            .map(|_| (0..4).map(|_| rng.next_symmetric()).collect())
            .collect();
        let set =
            c_lambda_sandwich(&k, &t, 0.5, &probes, Arc::clone(&g), 2, DEFAULT_EPSILON, 10)
                .unwrap();
        // inner proxy vertices must lie inside the outer proxy (inner subset
        // of C_lambda subset of outer, probed at the vertices)
        for s in &set.sandwiches {
            let v: Vec<f64> = s.point.iter().map(|c| c / s.upper).collect();
            let og = ops::gauge(&set.outer_proxy, &v).unwrap();
            assert!(og <= 1.0 + 1e-9, "inner vertex escapes outer proxy: {og}");
        }
        // the serialized row carries the run parameters
        let row = serde_json::to_value(&set.sandwiches[0]).unwrap();
        assert_eq!(row["m"], 2);
        assert_eq!(row["budget"], 10);
    }

    #[test]
    fn certified_interior_points_satisfy_the_grid_halfspace_bounds() {
        // exact implication from the dual bound: upper(x) <= 1 forces
        // <x, theta> <= bound(theta) for every grid theta
        let k = ConvexBody::<f64>::euclidean_ball(4).unwrap();
        let t = ConvexBody::lp_ball(3.0, vec![1.0, 1.0], true).unwrap();
        let g = grid4();
        let hk = ops::support_table(&k, &g).unwrap();
        let ht = ops::support_table(&t, &g).unwrap();
        let bounds = logmean::bound_table(&hk, &ht, 0.5);
        let mut rng = crate::volume::rng::SplitMix64::keyed(23, 0);
        for _ in 0..8 {
            let x: Vec<f64> = (0..4).map(|_| rng.next_symmetric()).collect();
            let s = norm_sandwich(&k, &t, 0.5, &x, &g, 2, DEFAULT_EPSILON, 10).unwrap();
            let v: Vec<f64> = x.iter().map(|c| c / s.upper).collect();
            for (theta, b) in g.directions.iter().zip(&bounds) {
                assert!(crate::geometry::vector::dot(&v, theta) <= b + 1e-9);
            }
        }
    }

    #[test]
    fn zero_probe_rejected() {
        let b = ConvexBody::<f64>::euclidean_ball(4).unwrap();
        let g = grid4();
        assert!(norm_sandwich(&b, &b, 0.5, &[0.0; 4], &g, 1, 0.05, 5).is_err());
    }
}
