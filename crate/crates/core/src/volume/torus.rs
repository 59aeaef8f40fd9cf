//! Exact-up-to-shrink volumes for torus-reducible bodies in C^2: bodies whose
//! gauge depends only on the coordinate moduli (|z_1|, |z_2|). For such a
//! body K, writing R(K) = {(r_1, r_2) >= 0 : (r_1, 0, r_2, 0) in K},
//!   |K| = (2 pi)^2 * integral of r_1 r_2 over R(K),
//! and R(K) is a convex planar region cut out by the half-planes
//! <r, m> <= h_K(m) over moduli directions m on the quarter circle. The
//! finite-direction polygon is an outer region; a certified shrink gives the
//! inner one. No sampling error anywhere on this path.

use crate::error::{GeomError, Result};
use crate::geometry::body::ConvexBody;
use crate::geometry::ops;
use crate::volume::estimate::{VolumeEstimate, VolumeMethod};
use crate::volume::exact2d::{clip_polygon, polygon_moment_xy, HalfPlane};

pub const DEFAULT_TORUS_ANGLES: usize = 8192;

/// Outer and inner volume bracket from the torus reduction, with the shrink
/// factor relating the regions (volumes scale by shrink^4 in C^2).
#[derive(Debug, Clone)]
pub struct TorusVolume {
    pub outer: VolumeEstimate,
    pub inner: VolumeEstimate,
    pub shrink: f64,
    pub angles: usize,
}

/// Moduli directions (cos t, sin t) at `angles` uniformly spaced t covering
/// [0, pi/2] inclusive; the covering radius of the set on the arc is half the
/// spacing.
pub fn quarter_grid(angles: usize) -> Vec<[f64; 2]> {
    assert!(angles >= 2);
    (0..angles)
        .map(|k| {
            let t = std::f64::consts::FRAC_PI_2 * k as f64 / (angles - 1) as f64;
            [t.cos(), t.sin()]
        })
        .collect()
}

pub fn quarter_mesh(angles: usize) -> f64 {
    std::f64::consts::FRAC_PI_2 / (angles - 1) as f64 / 2.0
}

/// Whether the representation guarantees the gauge depends only on
/// (|z_1|, |z_2|): complex l_p balls, and complex ellipsoids whose matrix is
/// diagonal with equal entries per complex pair (no cross-coordinate terms).
pub fn is_torus_reducible(body: &ConvexBody<f64>) -> bool {
    if body.dim() != 4 {
        return false;
    }
    match body {
        ConvexBody::LpBall { complex, .. } => *complex,
        ConvexBody::HermitianEllipsoid { matrix, complex } => {
            if !*complex {
                return false;
            }
            let tol = 1e-12 * (1.0 + matrix.data.iter().fold(0.0f64, |m, v| m.max(v.abs())));
            for i in 0..4 {
                for j in 0..4 {
                    if i != j && matrix.at(i, j).abs() > tol {
                        return false;
                    }
                }
            }
            (matrix.at(0, 0) - matrix.at(1, 1)).abs() <= tol
                && (matrix.at(2, 2) - matrix.at(3, 3)).abs() <= tol
        }
        _ => false,
    }
}

/// h_K at the phase-aligned lift (m_1, 0, m_2, 0) of a moduli direction.
/// Equals the support of the reduced region R(K) for torus-reducible bodies.
pub fn moduli_support_table(
    body: &ConvexBody<f64>,
    grid: &[[f64; 2]],
) -> Result<Vec<f64>> {
    grid.iter()
        .map(|m| ops::support(body, &[m[0], 0.0, m[1], 0.0]))
        .collect()
}

/// Logarithmic Lipschitz bound kappa for a support table on the quarter arc:
/// |d log h / dt| <= R / r with R, r certified from the table.
pub fn kappa_from_table(table: &[f64], mesh: f64) -> Result<f64> {
    let (r_lb, r_ub) = ops::radius_bounds_from_table(table, mesh)?;
    Ok(r_ub / r_lb)
}

/// Volume bracket from per-direction support bounds b_k on the quarter grid
/// and a logarithmic Lipschitz bound kappa for the underlying continuous
/// bound function b(m). The outer polygon intersects the sampled half-planes;
/// the inner region is shrink * outer with
///   shrink = 1 / (e^{kappa d} + R_region d / b_min e^{-kappa d}),  d = mesh.
pub fn torus_volume_from_bounds(
    bounds: &[f64],
    kappa: f64,
    angles: usize,
) -> Result<TorusVolume> {
    if bounds.len() != angles || angles < 16 {
        return Err(GeomError::InvalidParameter(format!(
            "need one bound per angle and >= 16 angles, got {}/{angles}",
            bounds.len()
        )));
    }
    let grid = quarter_grid(angles);
    let mesh = quarter_mesh(angles);
    let bmax = bounds.iter().cloned().fold(0.0f64, f64::max);
    let bmin = bounds.iter().cloned().fold(f64::INFINITY, f64::min);
    if !(bmin > 0.0) || !bmax.is_finite() {
        return Err(GeomError::Degenerate("support bounds not positive".into()));
    }
    let mut planes = vec![
        HalfPlane { nx: -1.0, ny: 0.0, b: 0.0 },
        HalfPlane { nx: 0.0, ny: -1.0, b: 0.0 },
    ];
    for (m, b) in grid.iter().zip(bounds) {
        planes.push(HalfPlane {
            nx: m[0],
            ny: m[1],
            b: *b,
        });
    }
    let r = 1.01 * bmax + 1e-9;
    let bbox = vec![[0.0, 0.0], [r, 0.0], [r, r], [0.0, r]];
    let poly = clip_polygon(bbox, &planes);
    let moment = polygon_moment_xy(&poly);
    if !(moment > 0.0) {
        return Err(GeomError::EmptyIntersection);
    }
    let outer_value = 4.0 * std::f64::consts::PI * std::f64::consts::PI * moment;
    let r_region = bmax / (1.0 - mesh);
    let bmin_lb = bmin * (-kappa * mesh).exp();
    let shrink = (1.0 / ((kappa * mesh).exp() + r_region * mesh / bmin_lb)).min(1.0);
    if !(shrink > 0.0) {
        return Err(GeomError::GridTooCoarse(format!(
            "torus shrink factor {shrink} not positive"
        )));
    }
    let outer = VolumeEstimate::exact(outer_value, VolumeMethod::Exact2d);
    let inner = outer.scaled(shrink.powi(4));
    Ok(TorusVolume {
        outer,
        inner,
        shrink,
        angles,
    })
}

/// Volume bracket for a single torus-reducible body.
pub fn torus_volume(body: &ConvexBody<f64>, angles: usize) -> Result<TorusVolume> {
    if !is_torus_reducible(body) {
        return Err(GeomError::Unsupported(format!(
            "{} is not certified torus-reducible",
            body.kind_name()
        )));
    }
    let grid = quarter_grid(angles);
    let table = moduli_support_table(body, &grid)?;
    let kappa = kappa_from_table(&table, quarter_mesh(angles))?;
    torus_volume_from_bounds(&table, kappa, angles)
}
