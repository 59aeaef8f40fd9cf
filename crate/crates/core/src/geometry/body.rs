//! Origin-symmetric convex body representations over R^{2n}.

use std::sync::Arc;

use crate::error::{GeomError, Result};
use crate::geometry::grid::DirectionGrid;
use crate::geometry::linalg::SymMatrix;
use crate::geometry::vector;
use crate::scalar::Scalar;
use crate::volume::rng::SplitMix64;

/// A closed halfspace {x : <x, normal> <= offset} with positive offset, so the
/// origin is strictly interior.
#[derive(Debug, Clone)]
pub struct Halfspace<S> {
    pub normal: Vec<S>,
    pub offset: S,
}

/// Tagged union of body representations. All bodies are origin-symmetric with
/// the origin strictly interior; constructors validate this.
#[derive(Debug, Clone)]
pub enum ConvexBody<S> {
    /// Convex hull of a vertex set closed under negation.
    VPolytope { vertices: Vec<Vec<S>> },
    /// Intersection of halfspaces whose normal set is closed under negation.
    HPolytope { halfspaces: Vec<Halfspace<S>> },
    /// Body known through support values on a direction grid; interpreted as
    /// the halfspace intersection over the sampled directions.
    SupportSampled {
        grid: Arc<DirectionGrid<S>>,
        values: Vec<S>,
    },
    /// Weighted l_p ball. With `complex` set the gauge is the l_p norm of the
    /// weighted complex moduli (w_j |z_j|); otherwise it is the plain weighted
    /// l_p norm on R^{2n} with w_j applied to both real slots of coordinate j.
    /// p = infinity is allowed.
    LpBall {
        p: S,
        weights: Vec<S>,
        complex: bool,
    },
    /// {x : <x, A x> <= 1} for A symmetric positive definite. With `complex`
    /// set, A must commute with the blockwise complex rotation.
    HermitianEllipsoid { matrix: SymMatrix<S>, complex: bool },
}

impl<S: Scalar> ConvexBody<S> {
    pub fn dim(&self) -> usize {
        match self {
            ConvexBody::VPolytope { vertices } => vertices.first().map_or(0, |v| v.len()),
            ConvexBody::HPolytope { halfspaces } => {
                halfspaces.first().map_or(0, |h| h.normal.len())
            }
            ConvexBody::SupportSampled { grid, .. } => grid.dim(),
            ConvexBody::LpBall { weights, .. } => 2 * weights.len(),
            ConvexBody::HermitianEllipsoid { matrix, .. } => matrix.dim,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            ConvexBody::VPolytope { .. } => "v-polytope",
            ConvexBody::HPolytope { .. } => "h-polytope",
            ConvexBody::SupportSampled { .. } => "support-sampled",
            ConvexBody::LpBall { .. } => "lp-ball",
            ConvexBody::HermitianEllipsoid { .. } => "hermitian-ellipsoid",
        }
    }

    pub fn v_polytope(vertices: Vec<Vec<S>>) -> Result<Self> {
        let b = ConvexBody::VPolytope { vertices };
        b.validate()?;
        Ok(b)
    }

    pub fn h_polytope(halfspaces: Vec<Halfspace<S>>) -> Result<Self> {
        let b = ConvexBody::HPolytope { halfspaces };
        b.validate()?;
        Ok(b)
    }

    pub fn support_sampled(grid: Arc<DirectionGrid<S>>, values: Vec<S>) -> Result<Self> {
        let b = ConvexBody::SupportSampled { grid, values };
        b.validate()?;
        Ok(b)
    }

    pub fn lp_ball(p: S, weights: Vec<S>, complex: bool) -> Result<Self> {
        let b = ConvexBody::LpBall {
            p,
            weights,
            complex,
        };
        b.validate()?;
        Ok(b)
    }

    pub fn hermitian_ellipsoid(matrix: SymMatrix<S>, complex: bool) -> Result<Self> {
        let b = ConvexBody::HermitianEllipsoid { matrix, complex };
        b.validate()?;
        Ok(b)
    }

    /// Euclidean unit ball B_2^{dim} as an l_2 ball.
    pub fn euclidean_ball(dim: usize) -> Result<Self> {
        if dim % 2 != 0 || dim == 0 {
            return Err(GeomError::OddDimension(dim));
        }
        Self::lp_ball(S::from_f64c(2.0), vec![S::one(); dim / 2], true)
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim() == 0 {
            return Err(GeomError::Degenerate("empty representation".into()));
        }
        if self.dim() % 2 != 0 {
            return Err(GeomError::OddDimension(self.dim()));
        }
        let tol = S::from_f64c(1e-9);
        match self {
            ConvexBody::VPolytope { vertices } => {
                let dim = self.dim();
                for v in vertices {
                    if v.len() != dim {
                        return Err(GeomError::DimensionMismatch {
                            expected: dim,
                            got: v.len(),
                        });
                    }
                }
                check_negation_closed(vertices, tol)
                    .map_err(|_| GeomError::NotSymmetric("vertex set".into()))?;
                self.check_origin_interior()
            }
            ConvexBody::HPolytope { halfspaces } => {
                let dim = self.dim();
                let mut normals = Vec::with_capacity(halfspaces.len());
                for h in halfspaces {
                    if h.normal.len() != dim {
                        return Err(GeomError::DimensionMismatch {
                            expected: dim,
                            got: h.normal.len(),
                        });
                    }
                    if h.offset <= S::zero() {
                        return Err(GeomError::InvalidParameter(
                            "halfspace offset must be positive".into(),
                        ));
                    }
                    if vector::norm(&h.normal) <= S::from_f64c(1e-12) {
                        return Err(GeomError::ZeroDirection);
                    }
                    // symmetry is about the set {x : |<x,n>| <= b}, so check
                    // closure on normalized (normal/offset) pairs
                    normals.push(vector::scale(&h.normal, S::one() / h.offset));
                }
                check_negation_closed(&normals, tol)
                    .map_err(|_| GeomError::NotSymmetric("halfspace set".into()))?;
                self.check_origin_interior()
            }
            ConvexBody::SupportSampled { grid, values } => {
                if values.len() != grid.len() {
                    return Err(GeomError::DimensionMismatch {
                        expected: grid.len(),
                        got: values.len(),
                    });
                }
                if values.iter().any(|v| *v <= S::zero() || !v.is_finite()) {
                    return Err(GeomError::Degenerate(
                        "support values must be positive and finite".into(),
                    ));
                }
                if !grid.orbit {
                    self.check_sampled_even_symmetry()?;
                }
                self.check_sampled_subadditivity()
            }
            ConvexBody::LpBall { p, weights, .. } => {
                if *p < S::one() {
                    return Err(GeomError::InvalidParameter("p must be >= 1".into()));
                }
                if weights.is_empty() || weights.iter().any(|w| *w <= S::zero()) {
                    return Err(GeomError::InvalidParameter(
                        "weights must be positive".into(),
                    ));
                }
                Ok(())
            }
            ConvexBody::HermitianEllipsoid { matrix, complex } => {
                if !matrix.is_spd() {
                    return Err(GeomError::NotSpd);
                }
                if *complex && !matrix.commutes_with_complex_structure(S::from_f64c(1e-9)) {
                    return Err(GeomError::NotSymmetric(
                        "ellipsoid matrix does not commute with the complex rotation".into(),
                    ));
                }
                Ok(())
            }
        }
    }

    /// Checks the origin is strictly interior (support positive on a probe
    /// set) and the body is bounded. Probabilistic spot check for polytopes.
    fn check_origin_interior(&self) -> Result<()> {
        let dim = self.dim();
        let mut probes: Vec<Vec<S>> = Vec::new();
        for i in 0..dim {
            let mut e = vec![S::zero(); dim];
            e[i] = S::one();
            probes.push(e.clone());
            probes.push(vector::neg(&e));
        }
        let mut rng = SplitMix64::keyed(0xB0D7, dim as u64);
        for _ in 0..64 {
            let v: Vec<S> = (0..dim)
                .map(|_| S::from_f64c(rng.next_normal()))
                .collect();
            if let Ok(u) = vector::normalize(&v) {
                probes.push(u);
            }
        }
        for p in &probes {
            let h = crate::geometry::ops::support(self, p)?;
            if !(h > S::from_f64c(1e-10)) {
                return Err(GeomError::Degenerate(
                    "origin not strictly interior".into(),
                ));
            }
            if !h.is_finite() {
                return Err(GeomError::Unbounded);
            }
        }
        Ok(())
    }

    fn check_sampled_even_symmetry(&self) -> Result<()> {
        let ConvexBody::SupportSampled { grid, values } = self else {
            unreachable!()
        };
        // spot check h(theta) = h(-theta) on a seeded sample of directions
        let tol = S::from_f64c(1e-8);
        let mut rng = SplitMix64::keyed(0x55AA, grid.len() as u64);
        let checks = grid.len().min(256);
        for _ in 0..checks {
            let i = (rng.next_u64() % grid.len() as u64) as usize;
            let negated = vector::neg(&grid.directions[i]);
            let (j, _) = nearest_direction(grid, &negated);
            let (a, b) = (values[i], values[j]);
            if (a - b).abs() > tol * (S::one() + a.abs()) {
                return Err(GeomError::NotSymmetric("sampled support values".into()));
            }
        }
        Ok(())
    }

    /// Necessary condition for a genuine support function: h(u+v) <= h(u) +
    /// h(v) for sampled u, v, up to a mesh-sized slack.
    fn check_sampled_subadditivity(&self) -> Result<()> {
        let ConvexBody::SupportSampled { grid, values } = self else {
            unreachable!()
        };
        let hmax = values.iter().fold(S::zero(), |m, v| if *v > m { *v } else { m });
        let slack = hmax * grid.mesh * S::from_f64c(2.0) + S::from_f64c(1e-9);
        let mut rng = SplitMix64::keyed(0xADD5, grid.len() as u64);
        for _ in 0..200 {
            let i = (rng.next_u64() % grid.len() as u64) as usize;
            let j = (rng.next_u64() % grid.len() as u64) as usize;
            let u = &grid.directions[i];
            let v = &grid.directions[j];
            let sum: Vec<S> = u.iter().zip(v).map(|(a, b)| *a + *b).collect();
            let len = vector::norm(&sum);
            if len < S::from_f64c(1e-6) {
                continue;
            }
            let unit = vector::scale(&sum, S::one() / len);
            let (k, dist) = nearest_direction(grid, &unit);
            // only trust the check when the nearest sample is genuinely close
            if dist > grid.mesh {
                continue;
            }
            if len * values[k] > values[i] + values[j] + slack {
                return Err(GeomError::Degenerate(
                    "sampled values violate support subadditivity".into(),
                ));
            }
        }
        Ok(())
    }
}

fn check_negation_closed<S: Scalar>(points: &[Vec<S>], tol: S) -> Result<()> {
    for p in points {
        let n = vector::neg(p);
        let scale = S::one() + vector::norm(p);
        let found = points
            .iter()
            .any(|q| q.iter().zip(&n).all(|(a, b)| (*a - *b).abs() <= tol * scale));
        if !found {
            return Err(GeomError::NotSymmetric("point set".into()));
        }
    }
    Ok(())
}

/// Index and geodesic distance of the grid direction nearest to a unit
/// vector; orbit grids measure in the quotient metric.
pub fn nearest_direction<S: Scalar>(grid: &DirectionGrid<S>, unit: &[S]) -> (usize, S) {
    let mut best = (0usize, S::from_f64c(std::f64::consts::PI));
    for (i, d) in grid.directions.iter().enumerate() {
        let c = if grid.orbit {
            vector::herm_abs(unit, d)
        } else {
            vector::dot(unit, d)
        };
        let c = if c > S::one() {
            S::one()
        } else if c < -S::one() {
            -S::one()
        } else {
            c
        };
        let dist = c.acos();
        if dist < best.1 {
            best = (i, dist);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cube2() -> ConvexBody<f64> {
        ConvexBody::lp_ball(f64::INFINITY, vec![1.0], false).unwrap()
    }

    #[test]
    fn dims_are_consistent() {
        assert_eq!(cube2().dim(), 2);
        assert_eq!(ConvexBody::<f64>::euclidean_ball(4).unwrap().dim(), 4);
    }

    #[test]
    fn asymmetric_vertex_set_rejected() {
        let r = ConvexBody::v_polytope(vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![0.0, -1.0]]);
        assert!(matches!(r, Err(GeomError::NotSymmetric(_))));
    }

    #[test]
    fn degenerate_vertex_set_rejected() {
        // segment on the x-axis: origin not interior in R^2
        let r = ConvexBody::v_polytope(vec![vec![1.0, 0.0], vec![-1.0, 0.0]]);
        assert!(r.is_err());
    }

    #[test]
    fn nonpositive_offset_rejected() {
        let r = ConvexBody::h_polytope(vec![
            Halfspace {
                normal: vec![1.0, 0.0],
                offset: 0.0,
            },
            Halfspace {
                normal: vec![-1.0, 0.0],
                offset: 0.0,
            },
        ]);
        assert!(r.is_err());
    }

    #[test]
    fn unbounded_halfspace_set_rejected() {
        // slab: unbounded along y
        let r = ConvexBody::h_polytope(vec![
            Halfspace {
                normal: vec![1.0, 0.0],
                offset: 1.0,
            },
            Halfspace {
                normal: vec![-1.0, 0.0],
                offset: 1.0,
            },
        ]);
        assert!(matches!(r, Err(GeomError::Unbounded)));
    }

    #[test]
    fn bad_lp_parameters_rejected() {
        assert!(ConvexBody::lp_ball(0.5, vec![1.0], true).is_err());
        assert!(ConvexBody::lp_ball(2.0, vec![1.0, -1.0], true).is_err());
    }

    #[test]
    fn non_commuting_complex_ellipsoid_rejected() {
        let a = SymMatrix::diagonal(&[1.0, 2.0, 3.0, 3.0]);
        assert!(ConvexBody::hermitian_ellipsoid(a, true).is_err());
        let ok = SymMatrix::diagonal(&[2.0, 2.0, 3.0, 3.0]);
        assert!(ConvexBody::hermitian_ellipsoid(ok, true).is_ok());
    }
}
