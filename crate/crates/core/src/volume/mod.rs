//! Volume computation: exact polygon pipelines in 2D (directly and through
//! the torus reduction of modulus-invariant bodies in C^2), analytic closed
//! forms, and Monte Carlo with exact binomial confidence intervals, all with
//! deterministic counter-based sampling.

pub mod analytic;
pub mod estimate;
pub mod exact2d;
pub mod mc;
pub mod orbit;
pub mod orthant;
pub mod rng;
pub mod torus;

pub use analytic::volume_analytic;
pub use estimate::{VolumeEstimate, VolumeMethod};
pub use exact2d::volume_exact_2d;
pub use mc::volume_mc;
