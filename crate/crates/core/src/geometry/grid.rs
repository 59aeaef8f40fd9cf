//! Finite direction grids on the unit sphere with certified covering radii.
//!
//! A grid discretizes "for all directions theta"; the recorded `mesh` is an
//! upper bound on the covering radius (max geodesic distance from any unit
//! vector to the grid), which downstream shrink certificates consume.

use crate::error::{GeomError, Result};
use crate::geometry::vector;
use crate::scalar::Scalar;
use crate::volume::rng::SplitMix64;

#[derive(Debug, Clone, PartialEq)]
pub enum GridGenerator {
    /// Uniformly spaced antipodal pairs on the circle.
    Uniform2d { pairs: usize },
    /// Low-discrepancy points on S^3 (Hopf-Fibonacci), symmetrized.
    Sphere4d { count: usize },
    /// Fibonacci points on the Hopf quotient sphere, lifted to orbit
    /// representatives in C^2; each listed direction stands for its whole
    /// complex-rotation orbit.
    HopfOrbit { count: usize },
    Custom,
}

#[derive(Debug, Clone)]
pub struct DirectionGrid<S> {
    pub directions: Vec<Vec<S>>,
    /// Covering radius bound: geodesic for plain grids, quotient-metric for
    /// orbit grids.
    pub mesh: S,
    pub generator: GridGenerator,
    /// Orbit grids represent full complex-rotation orbits; negation closure
    /// is implicit (phi = pi lies in every orbit).
    pub orbit: bool,
}

const COVERING_SAFETY: f64 = 1.25;

impl<S: Scalar> DirectionGrid<S> {
    pub fn dim(&self) -> usize {
        self.directions.first().map_or(0, |d| d.len())
    }

    pub fn len(&self) -> usize {
        self.directions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.directions.is_empty()
    }

    /// `pairs` uniformly spaced antipodal pairs on the circle; mesh pinned to
    /// pi / pairs.
    pub fn uniform_2d(pairs: usize) -> Result<Self> {
        if pairs < 2 {
            return Err(GeomError::InvalidParameter(
                "uniform 2D grid needs at least 2 pairs".into(),
            ));
        }
        let mut directions = Vec::with_capacity(2 * pairs);
        for k in 0..pairs {
            let t = std::f64::consts::PI * (k as f64) / (pairs as f64);
            directions.push(vec![S::from_f64c(t.cos()), S::from_f64c(t.sin())]);
        }
        for k in 0..pairs {
            directions.push(vector::neg(&directions[k]));
        }
        Ok(Self {
            directions,
            mesh: S::from_f64c(std::f64::consts::PI / pairs as f64),
            generator: GridGenerator::Uniform2d { pairs },
            orbit: false,
        })
    }

    /// Low-discrepancy S^3 grid via Hopf-Fibonacci sampling, closed under
    /// negation, with the coordinate axes appended. Covering radius measured
    /// by seeded probing with a safety factor.
    pub fn sphere_4d(count: usize) -> Result<Self> {
        if count < 16 {
            return Err(GeomError::InvalidParameter(
                "4D sphere grid needs at least 16 points".into(),
            ));
        }
        let half = count / 2;
        let mut directions: Vec<Vec<S>> = Vec::with_capacity(2 * half + 8);
        let mut raw: Vec<[f64; 4]> = Vec::with_capacity(half);
        for k in 0..half {
            let u = (k as f64 + 0.5) / half as f64;
            let eta = u.sqrt().asin(); // cos^2 eta uniform on [0,1]
            // Kronecker sequence on the two torus angles; sqrt(2) and sqrt(3)
            // are rationally independent, so (phi1, phi2) equidistributes
            let phi1 = 2.0 * std::f64::consts::PI * ((k as f64 * 2.0_f64.sqrt()) % 1.0);
            let phi2 = 2.0 * std::f64::consts::PI * ((k as f64 * 3.0_f64.sqrt()) % 1.0);
            raw.push([
                eta.cos() * phi1.cos(),
                eta.cos() * phi1.sin(),
                eta.sin() * phi2.cos(),
                eta.sin() * phi2.sin(),
            ]);
        }
        for p in &raw {
            directions.push(p.iter().map(|v| S::from_f64c(*v)).collect());
        }
        for p in &raw {
            directions.push(p.iter().map(|v| S::from_f64c(-*v)).collect());
        }
        for i in 0..4 {
            for sign in [1.0, -1.0] {
                let mut e = vec![S::zero(); 4];
                e[i] = S::from_f64c(sign);
                directions.push(e);
            }
        }
        let mesh = measure_covering(&directions, false);
        Ok(Self {
            directions,
            mesh: S::from_f64c(mesh),
            generator: GridGenerator::Sphere4d { count },
            orbit: false,
        })
    }

    /// Orbit grid for C^2: Fibonacci points on the Hopf quotient sphere,
    /// lifted to representatives; the axis orbit (1,0,0,0) and (0,0,1,0) are
    /// appended.
    pub fn hopf_orbit(count: usize) -> Result<Self> {
        if count < 16 {
            return Err(GeomError::InvalidParameter(
                "orbit grid needs at least 16 points".into(),
            ));
        }
        let mut directions: Vec<Vec<S>> = Vec::with_capacity(count + 2);
        for p in hopf_orbit_raw(count) {
            directions.push(p.iter().map(|v| S::from_f64c(*v)).collect());
        }
        directions.push(vec![S::one(), S::zero(), S::zero(), S::zero()]);
        directions.push(vec![S::zero(), S::zero(), S::one(), S::zero()]);
        let mesh = measure_covering(&directions, true);
        Ok(Self {
            directions,
            mesh: S::from_f64c(mesh),
            generator: GridGenerator::HopfOrbit { count },
            orbit: true,
        })
    }

    pub fn custom(directions: Vec<Vec<S>>, mesh: S, orbit: bool) -> Result<Self> {
        let g = Self {
            directions,
            mesh,
            generator: GridGenerator::Custom,
            orbit,
        };
        g.validate()?;
        Ok(g)
    }

    /// Adds extra directions (normalized, with negations). Extra points can
    /// only reduce the covering radius, so the recorded mesh stays valid.
    pub fn augment_with(&mut self, extra: &[Vec<S>]) -> Result<()> {
        for d in extra {
            let u = vector::normalize(d)?;
            self.directions.push(vector::neg(&u));
            self.directions.push(u);
        }
        self.generator = GridGenerator::Custom;
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if self.directions.is_empty() {
            return Err(GeomError::InvalidParameter("empty grid".into()));
        }
        if self.mesh <= S::zero() {
            return Err(GeomError::InvalidParameter("mesh must be positive".into()));
        }
        let tol = S::from_f64c(1e-12);
        let dim = self.dim();
        for d in &self.directions {
            if d.len() != dim {
                return Err(GeomError::DimensionMismatch {
                    expected: dim,
                    got: d.len(),
                });
            }
            if (vector::norm(d) - S::one()).abs() > tol {
                return Err(GeomError::InvalidParameter(
                    "grid direction is not unit".into(),
                ));
            }
        }
        if !self.orbit {
            self.check_negation_closure()?;
        }
        Ok(())
    }

    fn check_negation_closure(&self) -> Result<()> {
        // spot check: every direction's negation must be present
        let tol = S::from_f64c(1e-9);
        for d in &self.directions {
            let n = vector::neg(d);
            let found = self.directions.iter().any(|e| {
                e.iter()
                    .zip(&n)
                    .all(|(a, b)| (*a - *b).abs() <= tol)
            });
            if !found {
                return Err(GeomError::InvalidParameter(
                    "grid not closed under negation".into(),
                ));
            }
        }
        Ok(())
    }
}

/// Raw Hopf-orbit representatives (f64) for a Fibonacci set on the quotient
/// sphere. Exposed for the high-resolution volume grids.
pub fn hopf_orbit_raw(count: usize) -> Vec<[f64; 4]> {
    let golden = (1.0 + 5.0_f64.sqrt()) / 2.0;
    let mut out = Vec::with_capacity(count);
    for k in 0..count {
        // Fibonacci sphere on S^2
        let z = 1.0 - (2.0 * k as f64 + 1.0) / count as f64;
        let th = 2.0 * std::f64::consts::PI * ((k as f64 / golden) % 1.0);
        let r = (1.0 - z * z).max(0.0).sqrt();
        let (a, b, c) = (r * th.cos(), r * th.sin(), z);
        out.push(lift_hopf(a, b, c));
    }
    out
}

/// Lifts a Hopf-base point (a,b,c) on S^2 to an orbit representative
/// (z1, z2) in C^2 ~ R^4 with Hopf image (2 Re z1 conj(z2), 2 Im z1 conj(z2),
/// |z1|^2 - |z2|^2) = (a,b,c).
pub fn lift_hopf(a: f64, b: f64, c: f64) -> [f64; 4] {
    let r1 = ((1.0 + c) / 2.0).max(0.0).sqrt();
    if r1 > 1e-9 {
        // z1 = r1 (real), z2 = (a - i b) / (2 r1)
        [r1, 0.0, a / (2.0 * r1), -b / (2.0 * r1)]
    } else {
        [0.0, 0.0, 1.0, 0.0]
    }
}

/// Quotient-metric distance between complex-rotation orbits of unit vectors.
pub fn quotient_distance(x: &[f64; 4], y: &[f64; 4]) -> f64 {
    let re = x[0] * y[0] + x[1] * y[1] + x[2] * y[2] + x[3] * y[3];
    let im = x[1] * y[0] - x[0] * y[1] + x[3] * y[2] - x[2] * y[3];
    (re * re + im * im).sqrt().min(1.0).acos()
}

/// Measured covering radius bound by deterministic random probing, with a
/// safety factor. Quadratic cost; intended for grids up to ~50k directions
/// (the high-resolution volume grids use the clustered variant).
fn measure_covering<S: Scalar>(directions: &[Vec<S>], orbit: bool) -> f64 {
    use rayon::prelude::*;
    let dirs: Vec<[f64; 4]> = directions
        .iter()
        .map(|d| {
            let mut a = [0.0; 4];
            for (i, v) in d.iter().enumerate().take(4) {
                a[i] = v.to_f64().unwrap();
            }
            a
        })
        .collect();
    let dim = directions[0].len().min(4);
    let probes = 50_000usize;
    let worst = (0..probes)
        .into_par_iter()
        .map(|k| {
            let mut rng = SplitMix64::keyed(0xC0FFEE, k as u64);
            let mut p = [0.0f64; 4];
            loop {
                let mut n2 = 0.0;
                for v in p.iter_mut().take(dim) {
                    *v = rng.next_normal();
                    n2 += *v * *v;
                }
                if n2 > 1e-12 {
                    let inv = 1.0 / n2.sqrt();
                    for v in p.iter_mut().take(dim) {
                        *v *= inv;
                    }
                    break;
                }
            }
            let mut best = f64::INFINITY;
            if orbit {
                for d in &dirs {
                    let dist = quotient_distance(&p, d);
                    if dist < best {
                        best = dist;
                    }
                }
            } else {
                for d in &dirs {
                    let mut dp = 0.0;
                    for i in 0..dim {
                        dp += p[i] * d[i];
                    }
                    let dist = dp.clamp(-1.0, 1.0).acos();
                    if dist < best {
                        best = dist;
                    }
                }
            }
            best
        })
        .reduce(|| 0.0, f64::max);
    worst * COVERING_SAFETY
}
