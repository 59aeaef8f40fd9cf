//! Monte Carlo volume by rejection sampling in an axis-aligned bounding box,
//! with deterministic counter-based streams: the hit count (an exact integer
//! reduction over fixed-size chunks) is independent of thread count.

use rayon::prelude::*;

use crate::error::{GeomError, Result};
use crate::geometry::{body::ConvexBody, ops};
use crate::volume::estimate::VolumeEstimate;
use crate::volume::rng::{SplitMix64, CHUNK};

pub const MIN_SAMPLES: u64 = 10_000;
pub const DEFAULT_SAMPLES: u64 = 1_000_000;
pub const DEFAULT_CONFIDENCE: f64 = 0.999;

/// Rejection sampling against an arbitrary membership predicate over the box
/// prod [-halfwidths[i], halfwidths[i]]. Samples are drawn chunk by chunk
/// from streams keyed by (seed, chunk index), so the estimate is bit-identical
/// for any parallel schedule.
pub fn mc_volume_with<F>(
    halfwidths: &[f64],
    samples: u64,
    seed: u64,
    confidence: f64,
    is_inside: F,
) -> Result<VolumeEstimate>
where
    F: Fn(&[f64]) -> bool + Sync,
{
    if samples < MIN_SAMPLES {
        return Err(GeomError::InvalidParameter(format!(
            "need at least {MIN_SAMPLES} samples, got {samples}"
        )));
    }
    if halfwidths.iter().any(|w| !(*w > 0.0) || !w.is_finite()) {
        return Err(GeomError::Degenerate("bounding box not positive".into()));
    }
    let dim = halfwidths.len();
    let box_volume: f64 = halfwidths.iter().map(|w| 2.0 * w).product();
    let chunks = samples.div_ceil(CHUNK as u64);
    let hits: u64 = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = SplitMix64::keyed(seed, c);
            let in_chunk = if (c + 1) * CHUNK as u64 <= samples {
                CHUNK as u64
            } else {
                samples - c * CHUNK as u64
            };
            let mut x = vec![0.0f64; dim];
            let mut h = 0u64;
            for _ in 0..in_chunk {
                for (v, w) in x.iter_mut().zip(halfwidths) {
                    *v = w * rng.next_symmetric();
                }
                if is_inside(&x) {
                    h += 1;
                }
            }
            h
        })
        .sum();
    if hits == 0 {
        return Err(GeomError::Inconclusive(
            "no hits in the bounding box".into(),
        ));
    }
    VolumeEstimate::from_counts(hits, samples, box_volume, confidence, seed)
}

/// Axis-aligned bounding-box halfwidths h_K(e_i) from support values.
pub fn bounding_halfwidths(body: &ConvexBody<f64>) -> Result<Vec<f64>> {
    let dim = body.dim();
    (0..dim)
        .map(|i| {
            let mut e = vec![0.0; dim];
            e[i] = 1.0;
            ops::support(body, &e)
        })
        .collect()
}

/// Monte Carlo volume of a body via its gauge.
pub fn volume_mc(
    body: &ConvexBody<f64>,
    samples: u64,
    seed: u64,
    confidence: f64,
) -> Result<VolumeEstimate> {
    let halfwidths = bounding_halfwidths(body)?;
    mc_volume_with(&halfwidths, samples, seed, confidence, |x| {
        ops::gauge(body, x).map(|g| g <= 1.0).unwrap_or(false)
    })
}
