//! Primitive operations on convex bodies: support, gauge, polarity,
//! membership, and the complex-rotation symmetry check.

use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{GeomError, Result};
use crate::geometry::body::{nearest_direction, ConvexBody, Halfspace};
use crate::geometry::grid::DirectionGrid;
use crate::geometry::{simplex, vector};
use crate::scalar::Scalar;

/// Support function h(direction) = sup over the body of <x, direction>.
/// Positively homogeneous: the direction need not be unit.
pub fn support<S: Scalar>(body: &ConvexBody<S>, direction: &[S]) -> Result<S> {
    if direction.len() != body.dim() {
        return Err(GeomError::DimensionMismatch {
            expected: body.dim(),
            got: direction.len(),
        });
    }
    let dlen = vector::norm(direction);
    if dlen <= S::zero() {
        return Err(GeomError::ZeroDirection);
    }
    match body {
        ConvexBody::VPolytope { vertices } => Ok(vertices
            .iter()
            .map(|v| vector::dot(v, direction))
            .fold(S::neg_infinity(), |m, v| if v > m { v } else { m })),
        ConvexBody::HPolytope { halfspaces } => {
            let normals: Vec<Vec<S>> = halfspaces.iter().map(|h| h.normal.clone()).collect();
            let offsets: Vec<S> = halfspaces.iter().map(|h| h.offset).collect();
            simplex::max_dot_under_halfspaces(&normals, &offsets, direction)
        }
        ConvexBody::SupportSampled { grid, values } => {
            let unit = vector::scale(direction, S::one() / dlen);
            let (i, _) = nearest_direction(grid, &unit);
            Ok(dlen * values[i])
        }
        ConvexBody::LpBall { p, weights, complex } => {
            Ok(lp_dual_norm(*p, weights, *complex, direction))
        }
        ConvexBody::HermitianEllipsoid { matrix, .. } => {
            let x = matrix.solve(direction)?;
            Ok(vector::dot(direction, &x).max(S::zero()).sqrt())
        }
    }
}

/// Minkowski gauge ||x||_body = inf{t > 0 : x/t in body}; gauge(0) = 0.
pub fn gauge<S: Scalar>(body: &ConvexBody<S>, point: &[S]) -> Result<S> {
    if point.len() != body.dim() {
        return Err(GeomError::DimensionMismatch {
            expected: body.dim(),
            got: point.len(),
        });
    }
    if vector::norm_sq(point) == S::zero() {
        return Ok(S::zero());
    }
    match body {
        ConvexBody::VPolytope { vertices } => {
            // gauge_K = support of the polar, an LP over halfspaces with the
            // vertices as normals
            let offsets = vec![S::one(); vertices.len()];
            simplex::max_dot_under_halfspaces(vertices, &offsets, point)
        }
        ConvexBody::HPolytope { halfspaces } => Ok(halfspaces
            .iter()
            .map(|h| vector::dot(point, &h.normal) / h.offset)
            .fold(S::zero(), |m, v| if v > m { v } else { m })),
        ConvexBody::SupportSampled { grid, values } => {
            let mut worst = S::zero();
            for (d, h) in grid.directions.iter().zip(values) {
                let num = if grid.orbit {
                    vector::herm_abs(point, d)
                } else {
                    vector::dot(point, d)
                };
                let g = num / *h;
                if g > worst {
                    worst = g;
                }
            }
            Ok(worst)
        }
        ConvexBody::LpBall { p, weights, complex } => {
            Ok(lp_norm(*p, weights, *complex, point))
        }
        ConvexBody::HermitianEllipsoid { matrix, .. } => {
            Ok(matrix.quad(point).max(S::zero()).sqrt())
        }
    }
}

/// Weighted l_p gauge: over complex moduli when `complex`, per real
/// coordinate otherwise.
fn lp_norm<S: Scalar>(p: S, weights: &[S], complex: bool, x: &[S]) -> S {
    let entries: Vec<S> = if complex {
        vector::moduli(x)
            .iter()
            .zip(weights)
            .map(|(m, w)| *m * *w)
            .collect()
    } else {
        x.iter()
            .enumerate()
            .map(|(i, v)| v.abs() * weights[i / 2])
            .collect()
    };
    p_sum(p, &entries)
}

/// Support of the weighted l_p ball: the Hoelder-dual norm of the direction.
fn lp_dual_norm<S: Scalar>(p: S, weights: &[S], complex: bool, theta: &[S]) -> S {
    let entries: Vec<S> = if complex {
        vector::moduli(theta)
            .iter()
            .zip(weights)
            .map(|(m, w)| *m / *w)
            .collect()
    } else {
        theta
            .iter()
            .enumerate()
            .map(|(i, v)| v.abs() / weights[i / 2])
            .collect()
    };
    p_sum(dual_exponent(p), &entries)
}

/// l_q norm of a nonnegative vector, q in [1, infinity].
fn p_sum<S: Scalar>(q: S, entries: &[S]) -> S {
    if q.is_infinite() {
        return entries
            .iter()
            .fold(S::zero(), |m, v| if *v > m { *v } else { m });
    }
    if q == S::one() {
        return entries.iter().fold(S::zero(), |a, v| a + *v);
    }
    let mut acc = S::zero();
    for v in entries {
        acc = acc + v.powf(q);
    }
    acc.powf(S::one() / q)
}

pub fn dual_exponent<S: Scalar>(p: S) -> S {
    if p == S::one() {
        S::infinity()
    } else if p.is_infinite() {
        S::one()
    } else {
        p / (p - S::one())
    }
}

/// Polar body {y : <x,y> <= 1 for all x in body}.
pub fn polar<S: Scalar>(body: &ConvexBody<S>) -> Result<ConvexBody<S>> {
    match body {
        ConvexBody::VPolytope { vertices } => ConvexBody::h_polytope(
            vertices
                .iter()
                .map(|v| Halfspace {
                    normal: v.clone(),
                    offset: S::one(),
                })
                .collect(),
        ),
        ConvexBody::HPolytope { halfspaces } => ConvexBody::v_polytope(
            halfspaces
                .iter()
                .map(|h| vector::scale(&h.normal, S::one() / h.offset))
                .collect(),
        ),
        ConvexBody::SupportSampled { grid, .. } => {
            let values: Vec<S> = grid
                .directions
                .par_iter()
                .map(|d| gauge(body, d))
                .collect::<Result<_>>()?;
            ConvexBody::support_sampled(Arc::clone(grid), values)
        }
        ConvexBody::LpBall { p, weights, complex } => ConvexBody::lp_ball(
            dual_exponent(*p),
            weights.iter().map(|w| S::one() / *w).collect(),
            *complex,
        ),
        ConvexBody::HermitianEllipsoid { matrix, complex } => {
            ConvexBody::hermitian_ellipsoid(matrix.inverse()?, *complex)
        }
    }
}

/// Membership with a small absolute-relative slack so bisection and boundary
/// points do not flap.
pub fn contains<S: Scalar>(body: &ConvexBody<S>, point: &[S]) -> Result<bool> {
    if let ConvexBody::HPolytope { halfspaces } = body {
        let slack = S::from_f64c(1e-12);
        for h in halfspaces {
            if vector::dot(point, &h.normal) > h.offset * (S::one() + slack) {
                return Ok(false);
            }
        }
        return Ok(true);
    }
    Ok(gauge(body, point)? <= S::one() + S::from_f64c(1e-12))
}

/// Support values over every grid direction, in grid order (deterministic
/// regardless of parallel scheduling).
pub fn support_table<S: Scalar>(body: &ConvexBody<S>, grid: &DirectionGrid<S>) -> Result<Vec<S>> {
    grid.directions
        .par_iter()
        .map(|d| support(body, d))
        .collect()
}

/// Certified in/circumradius bounds from grid support values: with mesh m and
/// circumradius R, |h(u) - h(v)| <= R * d(u, v), so
/// R <= max_grid / (1 - m) and r >= min_grid - R * m.
pub fn radius_bounds<S: Scalar>(
    body: &ConvexBody<S>,
    grid: &DirectionGrid<S>,
) -> Result<(S, S)> {
    let table = support_table(body, grid)?;
    radius_bounds_from_table(&table, grid.mesh)
}

pub fn radius_bounds_from_table<S: Scalar>(table: &[S], mesh: S) -> Result<(S, S)> {
    let hmax = table
        .iter()
        .fold(S::zero(), |m, v| if *v > m { *v } else { m });
    let hmin = table
        .iter()
        .fold(S::infinity(), |m, v| if *v < m { *v } else { m });
    if mesh >= S::one() {
        return Err(GeomError::GridTooCoarse(
            "mesh >= 1 radian; no Lipschitz certificate".into(),
        ));
    }
    let r_ub = hmax / (S::one() - mesh);
    let r_lb = hmin - r_ub * mesh;
    if r_lb <= S::zero() {
        return Err(GeomError::GridTooCoarse(format!(
            "inradius lower bound not positive (min grid support {:?}, mesh slack {:?})",
            hmin.to_f64(),
            (r_ub * mesh).to_f64()
        )));
    }
    Ok((r_lb, r_ub))
}

/// Outcome of the finite complex-rotation symmetry test.
#[derive(Debug, Clone)]
pub struct ComplexSymmetryReport<S> {
    pub pass: bool,
    pub worst_relative_deviation: S,
    pub worst_direction: Vec<S>,
    pub worst_angle: S,
    pub angles: usize,
    pub directions: usize,
}

/// Tests |h(R_phi theta) - h(theta)| <= tol * h(theta) over the grid and a
/// uniform angle grid. A pass is evidence of complex-rotation symmetry, not
/// proof.
pub fn is_complex_body<S: Scalar>(
    body: &ConvexBody<S>,
    angles: usize,
    grid: &DirectionGrid<S>,
    tol: S,
) -> Result<ComplexSymmetryReport<S>> {
    if angles < 2 {
        return Err(GeomError::InvalidParameter(
            "need at least 2 test angles".into(),
        ));
    }
    let base = support_table(body, grid)?;
    let per_dir: Vec<(S, S)> = grid
        .directions
        .par_iter()
        .zip(&base)
        .map(|(theta, h0)| {
            let mut worst = (S::zero(), S::zero());
            for k in 1..angles {
                let phi = S::from_f64c(2.0 * std::f64::consts::PI * k as f64 / angles as f64);
                let rotated = vector::rotate_complex(theta, phi)?;
                let h = support(body, &rotated)?;
                let dev = (h - *h0).abs() / *h0;
                if dev > worst.0 {
                    worst = (dev, phi);
                }
            }
            Ok(worst)
        })
        .collect::<Result<_>>()?;
    let mut worst_idx = 0;
    let mut worst = (S::zero(), S::zero());
    for (i, w) in per_dir.iter().enumerate() {
        if w.0 > worst.0 {
            worst = *w;
            worst_idx = i;
        }
    }
    Ok(ComplexSymmetryReport {
        pass: worst.0 <= tol,
        worst_relative_deviation: worst.0,
        worst_direction: grid.directions[worst_idx].clone(),
        worst_angle: worst.1,
        angles,
        directions: grid.len(),
    })
}
