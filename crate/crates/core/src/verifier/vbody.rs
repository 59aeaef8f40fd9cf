//! Bodies as the verifier sees them: either a plain representation or the
//! exact continuous complex symmetrization of a halfspace family (whose gauge
//! has a closed form even though no finite halfspace list represents it), plus
//! best-effort volume dispatch with certified brackets.

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::geometry::body::{ConvexBody, Halfspace};
use crate::geometry::grid::DirectionGrid;
use crate::geometry::symmetrize::{continuous_gauge, continuous_support_lower};
use crate::geometry::{ops, vector};
use crate::volume::analytic::volume_analytic;
use crate::volume::estimate::{VolumeEstimate, VolumeMethod};
use crate::volume::exact2d::{polygon_area, volume_exact_2d};
use crate::volume::mc::{bounding_halfwidths, mc_volume_with};

/// Sampling and discretization parameters for all volume paths.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VolumeCfg {
    pub samples: u64,
    pub seed: u64,
    pub confidence: f64,
    /// Angle count for the torus-reduction path (4D modulus-invariant).
    pub torus_angles: usize,
    /// Representative count for the orbit-quotient path (4D complex).
    pub orbit_reps: usize,
    /// Direction pairs for 2D grids.
    pub pairs_2d: usize,
    /// Direction count for generic 4D grids.
    pub grid_4d: usize,
}

impl VolumeCfg {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            samples: 400_000,
            seed,
            confidence: 0.999,
            torus_angles: 8192,
            orbit_reps: 200_000,
            pairs_2d: 2880,
            grid_4d: 8000,
        }
    }
}

/// Convex hull of planar points (monotone chain), counter-clockwise.
fn convex_hull_2d(points: &[Vec<f64>]) -> Vec<[f64; 2]> {
    let mut pts: Vec<[f64; 2]> = points.iter().map(|p| [p[0], p[1]]).collect();
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let cross = |o: [f64; 2], a: [f64; 2], b: [f64; 2]| {
        (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
    };
    let build = |iter: &mut dyn Iterator<Item = [f64; 2]>| {
        let mut chain: Vec<[f64; 2]> = Vec::new();
        for p in iter {
            while chain.len() >= 2
                && cross(chain[chain.len() - 2], chain[chain.len() - 1], p) <= 0.0
            {
                chain.pop();
            }
            chain.push(p);
        }
        chain
    };
    let mut lower = build(&mut pts.iter().copied());
    let mut upper = build(&mut pts.iter().rev().copied());
    lower.pop();
    upper.pop();
    lower.append(&mut upper);
    lower
}

/// Certified circumradius upper bound for a continuous complex hull, via the
/// exact gauge on a quotient grid: gauge(u) >= (grid min) - gmax * mesh with
/// gmax = max_i |n_i|/b_i the gauge's Lipschitz constant, so
/// R = 1/min gauge <= 1/that. Errs when the bound cannot certify boundedness.
pub fn hull_circumradius_ub(halfspaces: &[Halfspace<f64>]) -> Result<f64> {
    let dim = halfspaces
        .first()
        .map(|h| h.normal.len())
        .ok_or_else(|| GeomError::Degenerate("no halfspaces".into()))?;
    let gmax = halfspaces
        .iter()
        .map(|h| vector::norm(&h.normal) / h.offset)
        .fold(0.0f64, f64::max);
    // the gauge is invariant under complex rotations, so a quotient grid with
    // its quotient covering radius suffices in 4D; probe grids are cached
    // (their construction measures a covering radius, which is not free)
    static PROBE_2D: std::sync::OnceLock<DirectionGrid<f64>> = std::sync::OnceLock::new();
    static PROBE_4D: std::sync::OnceLock<DirectionGrid<f64>> = std::sync::OnceLock::new();
    let grid = match dim {
        2 => PROBE_2D.get_or_init(|| DirectionGrid::uniform_2d(720).unwrap()),
        4 => PROBE_4D.get_or_init(|| DirectionGrid::hopf_orbit(2000).unwrap()),
        d => {
            return Err(GeomError::Unsupported(format!(
                "no hull probe grid in dimension {d}"
            )))
        }
    };
    let gmin_grid = grid
        .directions
        .iter()
        .map(|d| continuous_gauge(halfspaces, d))
        .fold(f64::INFINITY, f64::min);
    let gmin = gmin_grid - gmax * grid.mesh;
    if !(gmin > 0.0) {
        return Err(GeomError::Unbounded);
    }
    Ok(1.0 / gmin)
}

/// A body under verification.
#[derive(Debug, Clone)]
pub enum CheckBody {
    Plain(ConvexBody<f64>),
    /// {x : |<x, n_i>_C| <= b_i}: the intersection of ALL complex rotations
    /// of the halfspace family, exactly rotation-invariant by construction.
    ComplexHull { halfspaces: Vec<Halfspace<f64>> },
}

impl CheckBody {
    pub fn dim(&self) -> usize {
        match self {
            CheckBody::Plain(b) => b.dim(),
            CheckBody::ComplexHull { halfspaces } => {
                halfspaces.first().map_or(0, |h| h.normal.len())
            }
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            CheckBody::Plain(b) => b.kind_name(),
            CheckBody::ComplexHull { .. } => "complex-hull",
        }
    }

    /// Exact continuous symmetrization of a halfspace body; validates
    /// boundedness and symmetry through the modulus constraints.
    pub fn complex_hull(halfspaces: Vec<Halfspace<f64>>) -> Result<Self> {
        if halfspaces.is_empty() {
            return Err(GeomError::Degenerate("no halfspaces".into()));
        }
        let dim = halfspaces[0].normal.len();
        vector::check_even_dim(&halfspaces[0].normal)?;
        for h in &halfspaces {
            if h.normal.len() != dim {
                return Err(GeomError::DimensionMismatch {
                    expected: dim,
                    got: h.normal.len(),
                });
            }
            if !(h.offset > 0.0) || !(vector::norm(&h.normal) > 0.0) {
                return Err(GeomError::Degenerate(
                    "modulus constraint needs positive offset and normal".into(),
                ));
            }
        }
        // bounded iff the gauge is positive on the whole sphere; certify via
        // a grid minimum minus the Lipschitz slack (the axes alone can miss
        // unbounded complex-orthogonal directions)
        hull_circumradius_ub(&halfspaces)?;
        Ok(CheckBody::ComplexHull { halfspaces })
    }

    /// Exact gauge for both representations.
    pub fn gauge(&self, x: &[f64]) -> Result<f64> {
        match self {
            CheckBody::Plain(b) => ops::gauge(b, x),
            CheckBody::ComplexHull { halfspaces } => Ok(continuous_gauge(halfspaces, x)),
        }
    }

    /// Exact support (plain bodies only; the hull support has no closed form).
    pub fn support_exact(&self, theta: &[f64]) -> Result<f64> {
        match self {
            CheckBody::Plain(b) => ops::support(b, theta),
            CheckBody::ComplexHull { .. } => Err(GeomError::Unsupported(
                "continuous-hull support is only available as a certified lower bound".into(),
            )),
        }
    }

    /// Per-direction support values usable as certified LOWER bounds: exact
    /// for plain bodies, boundary-candidate bounds for hulls.
    pub fn support_lower_table(&self, directions: &[Vec<f64>]) -> Result<Vec<f64>> {
        match self {
            CheckBody::Plain(b) => directions.iter().map(|d| ops::support(b, d)).collect(),
            CheckBody::ComplexHull { halfspaces } => {
                // the shortfall of the candidate construction is second order
                // in the candidate spacing, so a strided subset keeps the
                // bound sharp while the table stays O(N * N / stride)
                let stride = directions.len().div_ceil(20_000).max(1);
                let candidates: Vec<Vec<f64>> = directions
                    .iter()
                    .step_by(stride)
                    .cloned()
                    .collect();
                continuous_support_lower(halfspaces, &candidates, directions)
            }
        }
    }

    /// Certified (inradius lower, circumradius upper) bounds. `mesh` is the
    /// covering radius of `directions` in the metric matching the body's
    /// symmetry (quotient metric for complex bodies on orbit grids).
    pub fn radius_bounds(&self, directions: &[Vec<f64>], mesh: f64) -> Result<(f64, f64)> {
        match self {
            CheckBody::Plain(b) => {
                let table: Vec<f64> = directions
                    .iter()
                    .map(|d| ops::support(b, d))
                    .collect::<Result<_>>()?;
                ops::radius_bounds_from_table(&table, mesh)
            }
            CheckBody::ComplexHull { halfspaces } => {
                // r = 1/max_unit gauge >= 1/gmax with the exact bound
                // gauge(u) <= max_i |u||n_i|/b_i
                let gmax = halfspaces
                    .iter()
                    .map(|h| vector::norm(&h.normal) / h.offset)
                    .fold(0.0f64, f64::max);
                let r_lb = 1.0 / gmax;
                // R = 1/min_unit gauge; gauge is gmax-Lipschitz, so the grid
                // minimum understates the sphere minimum by at most gmax*mesh
                let gmin_grid = directions
                    .iter()
                    .map(|d| continuous_gauge(halfspaces, d) / vector::norm(d))
                    .fold(f64::INFINITY, f64::min);
                let gmin = gmin_grid - gmax * mesh;
                if !(gmin > 0.0) {
                    return Err(GeomError::GridTooCoarse(format!(
                        "hull circumradius unbounded from grid (min gauge {gmin_grid}, \
                         Lipschitz slack {})",
                        gmax * mesh
                    )));
                }
                Ok((r_lb, 1.0 / gmin))
            }
        }
    }

    /// Upper bounds on the axis supports, valid as a Monte Carlo bounding box.
    pub fn box_halfwidths(&self) -> Result<Vec<f64>> {
        match self {
            CheckBody::Plain(b) => bounding_halfwidths(b),
            CheckBody::ComplexHull { halfspaces } => {
                let r_ub = hull_circumradius_ub(halfspaces)?;
                Ok(vec![r_ub; self.dim()])
            }
        }
    }

    /// True when the representation is exactly invariant under all blockwise
    /// complex rotations (no finite test needed).
    pub fn exactly_complex(&self) -> bool {
        match self {
            CheckBody::ComplexHull { .. } => true,
            CheckBody::Plain(b) => matches!(
                b,
                ConvexBody::LpBall { complex: true, .. }
                    | ConvexBody::HermitianEllipsoid { complex: true, .. }
            ),
        }
    }

    /// Finite complex-symmetry test for representations without a structural
    /// guarantee. Returns (pass, worst relative deviation).
    pub fn complex_symmetry_test(&self, grid: &DirectionGrid<f64>, tol: f64) -> Result<(bool, f64)> {
        if self.exactly_complex() {
            return Ok((true, 0.0));
        }
        match self {
            CheckBody::Plain(b) => {
                let rep = ops::is_complex_body(b, 16, grid, tol)?;
                Ok((rep.pass, rep.worst_relative_deviation))
            }
            CheckBody::ComplexHull { .. } => unreachable!(),
        }
    }

    /// Whether the body is invariant under coordinate sign flips, tested on
    /// the grid directions against all sign patterns (support values for
    /// plain bodies, the exact gauge for hulls).
    pub fn unconditional_test(&self, grid: &DirectionGrid<f64>, tol: f64) -> Result<(bool, f64)> {
        let d = self.dim();
        let mut worst = 0.0f64;
        for theta in grid.directions.iter().take(512) {
            let h0 = match self {
                CheckBody::Plain(b) => ops::support(b, theta)?,
                CheckBody::ComplexHull { .. } => self.gauge(theta)?,
            };
            for mask in 1..(1u32 << d) {
                let flipped: Vec<f64> = theta
                    .iter()
                    .enumerate()
                    .map(|(i, v)| if mask & (1 << i) != 0 { -v } else { *v })
                    .collect();
                let h = match self {
                    CheckBody::Plain(b) => ops::support(b, &flipped)?,
                    CheckBody::ComplexHull { .. } => self.gauge(&flipped)?,
                };
                worst = worst.max((h - h0).abs() / h0.max(1e-300));
            }
        }
        Ok((worst <= tol, worst))
    }

    /// Best-effort volume with a certified bracket: analytic closed forms,
    /// exact 2D polygon area, or Monte Carlo on the exact gauge.
    pub fn volume(&self, cfg: &VolumeCfg, seed_offset: u64) -> Result<VolumeEstimate> {
        let seed = cfg.seed.wrapping_add(seed_offset);
        match self {
            CheckBody::Plain(b) => {
                if let Ok(v) = volume_analytic(b) {
                    return Ok(v);
                }
                if b.dim() == 2 {
                    if let ConvexBody::HPolytope { .. } = b {
                        return volume_exact_2d(b);
                    }
                    if let ConvexBody::VPolytope { vertices } = b {
                        let hull = convex_hull_2d(vertices);
                        if hull.len() >= 3 {
                            return Ok(VolumeEstimate::exact(
                                polygon_area(&hull),
                                VolumeMethod::Exact2d,
                            ));
                        }
                    }
                }
                let hw = bounding_halfwidths(b)?;
                mc_volume_with(&hw, cfg.samples, seed, cfg.confidence, |x| {
                    ops::gauge(b, x).map(|g| g <= 1.0).unwrap_or(false)
                })
            }
            CheckBody::ComplexHull { halfspaces } => {
                // exact membership (closed-form gauge): plain MC, no
                // discretization source
                let r_ub = hull_circumradius_ub(halfspaces)?;
                let hw = vec![r_ub; self.dim()];
                mc_volume_with(&hw, cfg.samples, seed, cfg.confidence, |x| {
                    continuous_gauge(halfspaces, x) <= 1.0
                })
            }
        }
    }
}
