//! Numerical convex geometry over R^{2n} with the complex structure C^n.
//!
//! The crate provides origin-symmetric convex body representations and their
//! primitive operations (support, gauge, polarity, complex rotation), the
//! logarithmic mean L_lambda of two bodies, volume computation (exact in 2D,
//! analytic for closed forms, Monte Carlo with exact binomial confidence
//! intervals), complex interpolation norm sandwiches, and a verifier that
//! runs geometric inequalities with explicit error budgets.
//!
//! Core geometry is generic over the scalar type via [`Scalar`]; the
//! verification pipeline and the concrete aliases at the crate root use f64.

pub mod error;
pub mod geometry;
pub mod interpolation;
pub mod logmean;
pub mod scalar;
pub mod verifier;
pub mod volume;

pub use error::GeomError;
pub use scalar::{Real, Scalar};

/// Convex body over f64, the scalar type used by the verification pipeline.
pub type Body = geometry::ConvexBody<Real>;
/// Direction grid over f64.
pub type Grid = geometry::DirectionGrid<Real>;
