//! Exact 2D volume: halfspace-intersection polygons, the shoelace area, and
//! the xy-moment used by the torus reduction.

use crate::error::{GeomError, Result};
use crate::geometry::body::ConvexBody;
use crate::geometry::simplex;
use crate::volume::estimate::{VolumeEstimate, VolumeMethod};

/// A half-plane {(x, y) : nx*x + ny*y <= b}. Offsets of any sign are allowed
/// (constraints may pass through the origin).
#[derive(Debug, Clone, Copy)]
pub struct HalfPlane {
    pub nx: f64,
    pub ny: f64,
    pub b: f64,
}

/// Clips a convex polygon (counter-clockwise vertex cycle) by a sequence of
/// half-planes (Sutherland-Hodgman). Robust to redundant constraints; returns
/// an empty vector if the intersection is empty or degenerate.
pub fn clip_polygon(mut poly: Vec<[f64; 2]>, planes: &[HalfPlane]) -> Vec<[f64; 2]> {
    for hp in planes {
        if poly.is_empty() {
            return poly;
        }
        let mut out: Vec<[f64; 2]> = Vec::with_capacity(poly.len() + 1);
        let side = |p: &[f64; 2]| hp.nx * p[0] + hp.ny * p[1] - hp.b;
        for i in 0..poly.len() {
            let (p, q) = (poly[i], poly[(i + 1) % poly.len()]);
            let (sp, sq) = (side(&p), side(&q));
            if sp <= 0.0 {
                out.push(p);
            }
            if (sp < 0.0 && sq > 0.0) || (sp > 0.0 && sq < 0.0) {
                let t = sp / (sp - sq);
                out.push([p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])]);
            }
        }
        poly = out;
    }
    poly
}

/// Signed area of a counter-clockwise polygon (shoelace).
pub fn polygon_area(poly: &[[f64; 2]]) -> f64 {
    if poly.len() < 3 {
        return 0.0;
    }
    let mut acc = 0.0;
    for i in 0..poly.len() {
        let p = poly[i];
        let q = poly[(i + 1) % poly.len()];
        acc += p[0] * q[1] - q[0] * p[1];
    }
    acc / 2.0
}

/// Exact integral of x*y over a counter-clockwise polygon, via the boundary
/// (Green's theorem) formula
///   (1/24) sum (x_i y_{i+1} - x_{i+1} y_i)
///          (2 x_i y_i + x_i y_{i+1} + x_{i+1} y_i + 2 x_{i+1} y_{i+1}).
pub fn polygon_moment_xy(poly: &[[f64; 2]]) -> f64 {
    if poly.len() < 3 {
        return 0.0;
    }
    let mut acc = 0.0;
    for i in 0..poly.len() {
        let [x0, y0] = poly[i];
        let [x1, y1] = poly[(i + 1) % poly.len()];
        acc += (x0 * y1 - x1 * y0) * (2.0 * x0 * y0 + x0 * y1 + x1 * y0 + 2.0 * x1 * y1);
    }
    acc / 24.0
}

/// Exact area of a 2D halfspace intersection. The body must be a bounded
/// HPolytope in R^2 with the origin interior.
pub fn volume_exact_2d(body: &ConvexBody<f64>) -> Result<VolumeEstimate> {
    let ConvexBody::HPolytope { halfspaces } = body else {
        return Err(GeomError::Unsupported(format!(
            "exact 2D volume needs an h-polytope, got {}",
            body.kind_name()
        )));
    };
    if body.dim() != 2 {
        return Err(GeomError::DimensionMismatch {
            expected: 2,
            got: body.dim(),
        });
    }
    // certified bounding box from LP supports along the axes
    let normals: Vec<Vec<f64>> = halfspaces.iter().map(|h| h.normal.clone()).collect();
    let offsets: Vec<f64> = halfspaces.iter().map(|h| h.offset).collect();
    let mut ext = [0.0f64; 2];
    for (i, e) in [[1.0, 0.0], [0.0, 1.0]].iter().enumerate() {
        let hi = simplex::max_dot_under_halfspaces(&normals, &offsets, e).map_err(|e| {
            if matches!(e, GeomError::Unbounded) {
                GeomError::UnboundedIntersection
            } else {
                e
            }
        })?;
        let lo = simplex::max_dot_under_halfspaces(&normals, &offsets, &[-e[0], -e[1]])
            .map_err(|e| {
                if matches!(e, GeomError::Unbounded) {
                    GeomError::UnboundedIntersection
                } else {
                    e
                }
            })?;
        ext[i] = hi.max(lo) * 1.001 + 1e-9;
    }
    let bbox = vec![
        [-ext[0], -ext[1]],
        [ext[0], -ext[1]],
        [ext[0], ext[1]],
        [-ext[0], ext[1]],
    ];
    let planes: Vec<HalfPlane> = halfspaces
        .iter()
        .map(|h| HalfPlane {
            nx: h.normal[0],
            ny: h.normal[1],
            b: h.offset,
        })
        .collect();
    let poly = clip_polygon(bbox, &planes);
    let area = polygon_area(&poly);
    if area <= 0.0 {
        return Err(GeomError::EmptyIntersection);
    }
    Ok(VolumeEstimate::exact(area, VolumeMethod::Exact2d))
}
