use thiserror::Error;

/// Errors from geometry, volume, and interpolation operations.
#[derive(Debug, Error)]
pub enum GeomError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("dimension must be even and >= 2, got {0}")]
    OddDimension(usize),
    #[error("zero direction vector")]
    ZeroDirection,
    #[error("body is degenerate: {0}")]
    Degenerate(String),
    #[error("body is not origin-symmetric: {0}")]
    NotSymmetric(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("linear program unbounded (body not compact in direction)")]
    Unbounded,
    #[error("linear program infeasible")]
    Infeasible,
    #[error("halfspace intersection is empty")]
    EmptyIntersection,
    #[error("halfspace intersection is unbounded")]
    UnboundedIntersection,
    #[error("grid too coarse for a certified bound: {0}")]
    GridTooCoarse(String),
    #[error("matrix is not symmetric positive definite")]
    NotSpd,
    #[error("Monte Carlo estimate inconclusive: {0}")]
    Inconclusive(String),
    #[error("unsupported representation for this operation: {0}")]
    Unsupported(String),
    #[error("invalid body descriptor: {0}")]
    BadDescriptor(String),
}

pub type Result<T> = std::result::Result<T, GeomError>;
