//! Inclusion of the interpolated unit ball in the logarithmic mean: every
//! point certified inside C_lambda (via an upper bound on its interpolated
//! norm) must satisfy the finite-direction halfspace description of
//! L_lambda. This is an exact mathematical implication; a violation is a bug,
//! not data.

use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{GeomError, Result};
use crate::geometry::body::ConvexBody;
use crate::geometry::grid::DirectionGrid;
use crate::geometry::{ops, vector};
use crate::interpolation::upper::interp_norm_upper;
use crate::logmean;
use crate::verifier::report::{ErrorBudget, InequalityReport, Verdict};

/// Numerical slack for the exact implication (pure rounding, not a model
/// approximation).
const ROUNDING_SLACK: f64 = 1e-9;

#[allow(clippy::too_many_arguments)]
pub fn check_inclusion_c_in_l(
    check_id: &str,
    k: &ConvexBody<f64>,
    t: &ConvexBody<f64>,
    lambda: f64,
    probes: &[Vec<f64>],
    grid: Arc<DirectionGrid<f64>>,
    m: usize,
    epsilon: f64,
    budget: usize,
) -> Result<InequalityReport> {
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(GeomError::InvalidParameter(format!(
            "inclusion check needs lambda in (0,1), got {lambda}"
        )));
    }
    if probes.is_empty() {
        return Err(GeomError::InvalidParameter("no probe points".into()));
    }
    let inputs = serde_json::json!({
        "k": k.kind_name(),
        "t": t.kind_name(),
        "lambda": lambda,
        "probes": probes.len(),
        "grid": grid.len(),
        "m": m,
        "epsilon": epsilon,
        "budget": budget,
    });
    let hk = ops::support_table(k, &grid)?;
    let ht = ops::support_table(t, &grid)?;
    let bounds = logmean::bound_table(&hk, &ht, lambda);
    let results: Vec<(usize, f64)> = probes
        .par_iter()
        .map(|x| {
            let ub = interp_norm_upper(k, t, lambda, x, m, epsilon, budget)?;
            // x/upper is certified inside C_lambda
            let v: Vec<f64> = x.iter().map(|c| c / ub.value).collect();
            let mut violations = 0usize;
            let mut min_slack = f64::INFINITY;
            for (theta, b) in grid.directions.iter().zip(&bounds) {
                let pairing = if grid.orbit {
                    vector::herm_abs(&v, theta)
                } else {
                    vector::dot(&v, theta)
                };
                let slack = (b - pairing) / b;
                min_slack = min_slack.min(slack);
                if slack < -ROUNDING_SLACK {
                    violations += 1;
                }
            }
            Ok((violations, min_slack))
        })
        .collect::<Result<_>>()?;
    let violations: usize = results.iter().map(|r| r.0).sum();
    let margin = results
        .iter()
        .map(|r| r.1)
        .fold(f64::INFINITY, f64::min);
    let verdict = if violations == 0 {
        Verdict::Holds
    } else {
        Verdict::Violated
    };
    Ok(InequalityReport {
        check_id: check_id.to_string(),
        kind: "inclusion".to_string(),
        verdict,
        lambda: Some(lambda),
        lhs: None,
        rhs: None,
        margin,
        margin_outer: None,
        error_budget: ErrorBudget {
            total: ROUNDING_SLACK,
            sources: vec![],
        },
        notes: vec![format!(
            "{} certified probes against {} halfspace bounds; {} violations; \
             min relative slack {margin:.3e}",
            probes.len(),
            grid.len(),
            violations
        )],
        inputs,
    })
}

/// Deterministic probe points on the unit sphere of R^{2n} (low-discrepancy,
/// no environment entropy).
pub fn default_probes(dim: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut out = Vec::with_capacity(count);
    let mut rng = crate::volume::rng::SplitMix64::keyed(seed, 0);
    while out.len() < count {
        let p: Vec<f64> = (0..dim).map(|_| rng.next_normal()).collect();
        let n = vector::norm(&p);
        if n > 1e-9 {
            out.push(p.iter().map(|v| v / n).collect());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equal_bodies_trivially_included() {
        let b = ConvexBody::<f64>::euclidean_ball(4).unwrap();
        let grid = Arc::new(DirectionGrid::sphere_4d(1500).unwrap());
        let probes = default_probes(4, 25, 42);
        let r =
            check_inclusion_c_in_l("eq", &b, &b, 0.5, &probes, grid, 2, 0.05, 10).unwrap();
        assert_eq!(r.verdict, Verdict::Holds, "{r:?}");
        assert!(r.margin >= -ROUNDING_SLACK);
    }

    #[test]
    fn l1_linf_probes_inside_l_half() {
        let k = ConvexBody::lp_ball(1.0, vec![1.0, 1.0], true).unwrap();
        let t = ConvexBody::lp_ball(f64::INFINITY, vec![1.0, 1.0], true).unwrap();
        let grid = Arc::new(DirectionGrid::sphere_4d(1500).unwrap());
        let probes = default_probes(4, 25, 7);
        let r =
            check_inclusion_c_in_l("l1linf", &k, &t, 0.5, &probes, grid, 2, 0.05, 10).unwrap();
        assert_eq!(r.verdict, Verdict::Holds, "{r:?}");
    }

    #[test]
    fn orbit_grid_constraints_also_hold_for_complex_pairs() {
        let k = ConvexBody::lp_ball(1.5, vec![1.0, 1.0], true).unwrap();
        let t = ConvexBody::<f64>::euclidean_ball(4).unwrap();
        let grid = Arc::new(DirectionGrid::hopf_orbit(1000).unwrap());
        let probes = default_probes(4, 15, 9);
        let r =
            check_inclusion_c_in_l("orbit", &k, &t, 0.4, &probes, grid, 2, 0.05, 10).unwrap();
        assert_eq!(r.verdict, Verdict::Holds, "{r:?}");
    }

    #[test]
    fn endpoint_lambda_rejected() {
        let b = ConvexBody::<f64>::euclidean_ball(4).unwrap();
        let grid = Arc::new(DirectionGrid::sphere_4d(500).unwrap());
        assert!(check_inclusion_c_in_l(
            "bad",
            &b,
            &b,
            0.0,
            &default_probes(4, 3, 1),
            grid,
            1,
            0.05,
            5
        )
        .is_err());
    }
}
