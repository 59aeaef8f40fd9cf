//! Monte Carlo volume for complex-rotation-invariant bodies in C^2 through
//! the Hopf quotient: a direction grid of orbit representatives, where each
//! stored constraint |<x, rep>_C| <= b stands for the whole circle of
//! rotated halfspaces. High-resolution grids make the certified inner shrink
//! cheap; a two-level cluster bound prunes almost all constraints per sample.

use rayon::prelude::*;

use crate::error::{GeomError, Result};
use crate::geometry::grid::{hopf_orbit_raw, quotient_distance};
use crate::volume::estimate::VolumeEstimate;
use crate::volume::mc::mc_volume_with;
use crate::volume::rng::SplitMix64;

/// Orbit representatives with a measured quotient covering radius and a
/// coarse clustering for fast nearest/violation queries.
pub struct OrbitGrid {
    pub reps: Vec<[f64; 4]>,
    /// Covering radius bound of the rep set in the quotient metric.
    pub mesh: f64,
    coarse: Vec<[f64; 4]>,
    /// Rep indices grouped by nearest coarse center.
    members: Vec<Vec<u32>>,
    /// Max quotient distance of a member to its center.
    radius: Vec<f64>,
}

const COVERING_SAFETY: f64 = 1.25;

impl OrbitGrid {
    pub fn new(count: usize) -> Self {
        assert!(count >= 256, "orbit volume grids start at 256 points");
        let mut reps = hopf_orbit_raw(count);
        reps.push([1.0, 0.0, 0.0, 0.0]);
        reps.push([0.0, 0.0, 1.0, 0.0]);
        let nc = ((1.5 * (reps.len() as f64).sqrt()) as usize).max(64);
        let coarse = hopf_orbit_raw(nc);
        let assign: Vec<usize> = reps
            .par_iter()
            .map(|r| {
                let mut best = (0usize, f64::INFINITY);
                for (c, ctr) in coarse.iter().enumerate() {
                    let d = quotient_distance(r, ctr);
                    if d < best.1 {
                        best = (c, d);
                    }
                }
                best.0
            })
            .collect();
        let mut members = vec![Vec::new(); nc];
        let mut radius = vec![0.0f64; nc];
        for (i, &c) in assign.iter().enumerate() {
            members[c].push(i as u32);
            radius[c] = radius[c].max(quotient_distance(&reps[i], &coarse[c]));
        }
        let mut grid = Self {
            reps,
            mesh: 0.0,
            coarse,
            members,
            radius,
        };
        grid.mesh = grid.measure_covering() * COVERING_SAFETY;
        grid
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Quotient distance from an arbitrary unit vector to the rep set, via
    /// the cluster structure.
    pub fn nearest_distance(&self, p: &[f64; 4]) -> f64 {
        let dc: Vec<f64> = self
            .coarse
            .iter()
            .map(|c| quotient_distance(p, c))
            .collect();
        let mut best = f64::INFINITY;
        // tight initial bound, then only clusters that can beat it
        for (c, d) in dc.iter().enumerate() {
            if !self.members[c].is_empty() {
                best = best.min(d + self.radius[c]);
            }
        }
        for (c, d) in dc.iter().enumerate() {
            if d - self.radius[c] >= best {
                continue;
            }
            for &m in &self.members[c] {
                best = best.min(quotient_distance(p, &self.reps[m as usize]));
            }
        }
        best
    }

    fn measure_covering(&self) -> f64 {
        (0..50_000usize)
            .into_par_iter()
            .map(|k| {
                let mut rng = SplitMix64::keyed(0x0B17, k as u64);
                let mut p = [0.0f64; 4];
                loop {
                    let mut n2 = 0.0;
                    for v in p.iter_mut() {
                        *v = rng.next_normal();
                        n2 += *v * *v;
                    }
                    if n2 > 1e-12 {
                        let inv = 1.0 / n2.sqrt();
                        for v in p.iter_mut() {
                            *v *= inv;
                        }
                        break;
                    }
                }
                self.nearest_distance(&p)
            })
            .reduce(|| 0.0, f64::max)
    }
}

/// Volume bracket from orbit sampling: `outer` estimates the finite-orbit
/// intersection (a superset of the true body); `inner` = shrink^4 * outer is
/// a certified subset's volume.
#[derive(Debug, Clone)]
pub struct OrbitVolume {
    pub outer: VolumeEstimate,
    pub inner: VolumeEstimate,
    pub shrink: f64,
}

#[inline]
fn herm_abs4(x: &[f64], y: &[f64; 4]) -> f64 {
    let re = x[0] * y[0] + x[1] * y[1] + x[2] * y[2] + x[3] * y[3];
    let im = x[1] * y[0] - x[0] * y[1] + x[3] * y[2] - x[2] * y[3];
    (re * re + im * im).sqrt()
}

/// Monte Carlo volume of O = {x : |<x, rep_k>_C| <= b_k} with the certified
/// shrink O_in = s O satisfying O_in inside the true body
/// {x : <x, theta> <= b(theta) for all theta}, where b is the continuous
/// orbit-invariant bound with logarithmic quotient-Lipschitz constant at most
/// `kappa` and values >= b_k at the reps.
pub fn orbit_volume_from_bounds(
    grid: &OrbitGrid,
    bounds: &[f64],
    kappa: f64,
    samples: u64,
    seed: u64,
    confidence: f64,
) -> Result<OrbitVolume> {
    if bounds.len() != grid.len() {
        return Err(GeomError::DimensionMismatch {
            expected: grid.len(),
            got: bounds.len(),
        });
    }
    let bmax = bounds.iter().cloned().fold(0.0f64, f64::max);
    let bmin = bounds.iter().cloned().fold(f64::INFINITY, f64::min);
    if !(bmin > 0.0) || !bmax.is_finite() {
        return Err(GeomError::Degenerate("orbit bounds not positive".into()));
    }
    let delta = grid.mesh;
    if delta >= 0.5 {
        return Err(GeomError::GridTooCoarse(format!(
            "orbit covering radius {delta} too large"
        )));
    }
    // circumradius of O from its own constraint table (h_O is orbit-invariant
    // and R_O-Lipschitz in the quotient metric)
    let r_outer = bmax / (1.0 - delta);
    let bmin_lb = bmin * (-kappa * delta).exp();
    let shrink = (1.0 / ((kappa * delta).exp() + r_outer * delta / bmin_lb)).min(1.0);

    // per-cluster data for the pruned membership test
    let nc = grid.coarse.len();
    let mut bmin_c = vec![f64::INFINITY; nc];
    for (c, mem) in grid.members.iter().enumerate() {
        for &m in mem {
            bmin_c[c] = bmin_c[c].min(bounds[m as usize]);
        }
    }
    let chord: Vec<f64> = grid.radius.iter().map(|r| 2.0 * (r / 2.0).sin()).collect();
    let is_inside = |x: &[f64]| -> bool {
        let nrm = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3]).sqrt();
        for c in 0..nc {
            if grid.members[c].is_empty() {
                continue;
            }
            let hc = herm_abs4(x, &grid.coarse[c]);
            // every member satisfies herm <= hc + ||x|| * chord(radius)
            if hc + nrm * chord[c] <= bmin_c[c] {
                continue;
            }
            for &m in &grid.members[c] {
                if herm_abs4(x, &grid.reps[m as usize]) > bounds[m as usize] {
                    return false;
                }
            }
        }
        true
    };
    let outer = mc_volume_with(&[r_outer; 4], samples, seed, confidence, is_inside)?;
    let inner = outer.scaled(shrink.powi(4));
    Ok(OrbitVolume {
        outer,
        inner,
        shrink,
    })
}
