//! The logarithmic mean of two bodies: the set of x with
//! <x, theta> <= h_K(theta)^{1-lambda} h_T(theta)^lambda for all theta,
//! approximated from outside by a finite-direction intersection and from
//! inside by a certified global shrink of that intersection.

use std::sync::Arc;

use crate::error::{GeomError, Result};
use crate::geometry::body::{ConvexBody, Halfspace};
use crate::geometry::grid::DirectionGrid;
use crate::geometry::ops;
use crate::scalar::Scalar;

/// Inner and outer approximations of the logarithmic mean, with the shrink
/// factor relating them: inner = shrink * outer and
/// inner <= true mean <= outer.
#[derive(Debug, Clone)]
pub struct LogMeanBody<S> {
    pub outer: ConvexBody<S>,
    pub inner: ConvexBody<S>,
    pub lambda: S,
    pub grid: Arc<DirectionGrid<S>>,
    pub shrink: S,
}

fn check_lambda<S: Scalar>(lambda: S) -> Result<()> {
    if !(lambda >= S::zero() && lambda <= S::one()) {
        return Err(GeomError::InvalidParameter(format!(
            "lambda must lie in [0,1], got {lambda}"
        )));
    }
    Ok(())
}

/// Weighted geometric mean with exact endpoint collapse.
pub fn geometric_mean<S: Scalar>(a: S, b: S, lambda: S) -> S {
    if lambda == S::zero() {
        a
    } else if lambda == S::one() {
        b
    } else {
        a.powf(S::one() - lambda) * b.powf(lambda)
    }
}

/// The defining support bound h_K(theta)^{1-lambda} h_T(theta)^lambda.
pub fn log_mean_support_bound<S: Scalar>(
    k: &ConvexBody<S>,
    t: &ConvexBody<S>,
    lambda: S,
    direction: &[S],
) -> Result<S> {
    check_lambda(lambda)?;
    if k.dim() != t.dim() {
        return Err(GeomError::DimensionMismatch {
            expected: k.dim(),
            got: t.dim(),
        });
    }
    Ok(geometric_mean(
        ops::support(k, direction)?,
        ops::support(t, direction)?,
        lambda,
    ))
}

/// Per-direction bound table from precomputed support tables.
pub fn bound_table<S: Scalar>(hk: &[S], ht: &[S], lambda: S) -> Vec<S> {
    hk.iter()
        .zip(ht)
        .map(|(a, b)| geometric_mean(*a, *b, lambda))
        .collect()
}

/// Certified shrink factor: for x in the finite-direction outer body and any
/// unit theta with nearest grid direction g at distance <= mesh,
///   <x, theta> <= b(g) + R_outer * mesh  and  b(theta) >= b(g) e^{-kappa mesh},
/// where kappa = (1-lambda) R_K/r_K + lambda R_T/r_T bounds the logarithmic
/// Lipschitz constant of the bound. Hence shrink * outer lies inside the true
/// logarithmic mean for
///   shrink = 1 / (e^{kappa mesh} + R_outer * mesh / b_min),
/// with b_min = (min grid bound) e^{-kappa mesh}.
pub fn certified_shrink<S: Scalar>(
    hk: &[S],
    ht: &[S],
    bounds: &[S],
    lambda: S,
    mesh: S,
) -> Result<S> {
    let (rk_lb, rk_ub) = ops::radius_bounds_from_table(hk, mesh)?;
    let (rt_lb, rt_ub) = ops::radius_bounds_from_table(ht, mesh)?;
    let kappa = (S::one() - lambda) * rk_ub / rk_lb + lambda * rt_ub / rt_lb;
    let bmax = bounds
        .iter()
        .fold(S::zero(), |m, v| if *v > m { *v } else { m });
    let bmin = bounds
        .iter()
        .fold(S::infinity(), |m, v| if *v < m { *v } else { m });
    if !(bmin > S::zero()) {
        return Err(GeomError::Degenerate("support bound not positive".into()));
    }
    let r_outer = bmax / (S::one() - mesh);
    let bmin_lb = bmin * (-kappa * mesh).exp();
    let s = S::one() / ((kappa * mesh).exp() + r_outer * mesh / bmin_lb);
    if !(s > S::zero()) {
        return Err(GeomError::GridTooCoarse(format!(
            "shrink factor {:?} not positive",
            s.to_f64()
        )));
    }
    Ok(if s > S::one() { S::one() } else { s })
}

/// Builds the finite-direction outer body and the certified inner shrink.
/// Orbit grids are rejected here: their recorded mesh covers the quotient
/// sphere, not the real sphere that the halfspace certificate needs (the
/// orbit-based volume pipeline carries its own certificate).
pub fn log_mean_outer<S: Scalar>(
    k: &ConvexBody<S>,
    t: &ConvexBody<S>,
    lambda: S,
    grid: Arc<DirectionGrid<S>>,
) -> Result<LogMeanBody<S>> {
    check_lambda(lambda)?;
    if grid.orbit {
        return Err(GeomError::Unsupported(
            "logarithmic-mean outer bodies need a plain (non-orbit) grid".into(),
        ));
    }
    if k.dim() != t.dim() || k.dim() != grid.dim() {
        return Err(GeomError::DimensionMismatch {
            expected: grid.dim(),
            got: if k.dim() != grid.dim() { k.dim() } else { t.dim() },
        });
    }
    let hk = ops::support_table(k, &grid)?;
    let ht = ops::support_table(t, &grid)?;
    let bounds = bound_table(&hk, &ht, lambda);
    let shrink = certified_shrink(&hk, &ht, &bounds, lambda, grid.mesh)?;
    let outer_halfspaces: Vec<Halfspace<S>> = grid
        .directions
        .iter()
        .zip(&bounds)
        .map(|(d, b)| Halfspace {
            normal: d.clone(),
            offset: *b,
        })
        .collect();
    let inner_halfspaces: Vec<Halfspace<S>> = outer_halfspaces
        .iter()
        .map(|h| Halfspace {
            normal: h.normal.clone(),
            offset: h.offset * shrink,
        })
        .collect();
    Ok(LogMeanBody {
        outer: ConvexBody::h_polytope(outer_halfspaces)?,
        inner: ConvexBody::h_polytope(inner_halfspaces)?,
        lambda,
        grid,
        shrink,
    })
}
