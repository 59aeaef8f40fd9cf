//! Scalar abstraction for the generic geometry kernels.

use std::fmt::{Debug, Display};

/// Floating-point scalar the geometry kernels are generic over.
///
/// `f32` works for exploratory use; the verifier and all certified error
/// accounting run on `f64` (see [`Real`]).
pub trait Scalar:
    num_traits::Float
    + num_traits::FromPrimitive
    + num_traits::ToPrimitive
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + 'static
{
    /// Shorthand for lossy conversion from f64 constants.
    fn from_f64c(v: f64) -> Self {
        Self::from_f64(v).expect("f64 constant representable")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Scalar type used by the verification pipeline.
pub type Real = f64;
