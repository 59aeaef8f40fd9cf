//! Volume estimates: exact values and Monte Carlo values with exact
//! (Clopper-Pearson) binomial confidence intervals.

use serde::{Deserialize, Serialize};
use statrs::distribution::{Beta, ContinuousCDF};

use crate::error::{GeomError, Result};

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum VolumeMethod {
    Exact2d,
    Analytic,
    MonteCarlo,
}

/// A volume value with a certified two-sided interval
/// [value - half_width, value + half_width]. Exact results have zero width;
/// Monte Carlo results carry a symmetric hull of the exact Clopper-Pearson
/// interval at the stated confidence, plus the sample count and seed.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct VolumeEstimate {
    pub value: f64,
    pub half_width: f64,
    /// Two-sided coverage probability; 1.0 for exact values.
    pub confidence: f64,
    pub samples: u64,
    /// 0 for exact values.
    pub seed: u64,
    pub method: VolumeMethod,
}

impl VolumeEstimate {
    pub fn exact(value: f64, method: VolumeMethod) -> Self {
        Self {
            value,
            half_width: 0.0,
            confidence: 1.0,
            samples: 0,
            seed: 0,
            method,
        }
    }

    /// Monte Carlo estimate from `hits` out of `samples` draws in a reference
    /// region of volume `box_volume`. The stored half-width is the symmetric
    /// hull of the (asymmetric) exact binomial interval, which is
    /// conservative.
    pub fn from_counts(
        hits: u64,
        samples: u64,
        box_volume: f64,
        confidence: f64,
        seed: u64,
    ) -> Result<Self> {
        let (pl, pu) = clopper_pearson(hits, samples, confidence)?;
        let p = hits as f64 / samples as f64;
        let half_width = box_volume * (pu - p).max(p - pl);
        Ok(Self {
            value: box_volume * p,
            half_width,
            confidence,
            samples,
            seed,
            method: VolumeMethod::MonteCarlo,
        })
    }

    pub fn lower(&self) -> f64 {
        (self.value - self.half_width).max(0.0)
    }

    pub fn upper(&self) -> f64 {
        self.value + self.half_width
    }

    pub fn is_exact(&self) -> bool {
        self.method != VolumeMethod::MonteCarlo
    }

    /// Scales the estimate (and its interval) by a positive exact factor,
    /// e.g. a shrink factor raised to the dimension.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            value: self.value * factor,
            half_width: self.half_width * factor,
            ..self.clone()
        }
    }
}

/// Exact two-sided Clopper-Pearson interval for a binomial proportion.
pub fn clopper_pearson(hits: u64, samples: u64, confidence: f64) -> Result<(f64, f64)> {
    if samples == 0 || hits > samples {
        return Err(GeomError::InvalidParameter(format!(
            "bad binomial counts: {hits}/{samples}"
        )));
    }
    if !(0.0 < confidence && confidence < 1.0) {
        return Err(GeomError::InvalidParameter(format!(
            "confidence must lie in (0,1), got {confidence}"
        )));
    }
    let alpha = 1.0 - confidence;
    let n = samples as f64;
    let k = hits as f64;
    let lower = if hits == 0 {
        0.0
    } else {
        Beta::new(k, n - k + 1.0)
            .map_err(|e| GeomError::InvalidParameter(e.to_string()))?
            .inverse_cdf(alpha / 2.0)
    };
    let upper = if hits == samples {
        1.0
    } else {
        Beta::new(k + 1.0, n - k)
            .map_err(|e| GeomError::InvalidParameter(e.to_string()))?
            .inverse_cdf(1.0 - alpha / 2.0)
    };
    Ok((lower, upper))
}
