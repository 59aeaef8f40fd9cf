//! Complex interpolation of norm pairs: certified sandwich bounds on the
//! interpolated norm from an analytic-family construction (upper) and its
//! dual geometric-mean bound (lower), plus closed-form oracle families.

pub mod candidate;
pub mod closed;
pub mod lower;
pub mod sandwich;
pub mod upper;

pub use candidate::{AnalyticCandidate, BoundaryDiagnostics};
pub use closed::{calderon_exponent, hermitian_geodesic, interp_norm_closed, ClosedFamily};
pub use lower::interp_norm_lower;
pub use sandwich::{c_lambda_sandwich, norm_sandwich, NormSandwich, SandwichSet};
pub use upper::{interp_norm_upper, UpperBound};
