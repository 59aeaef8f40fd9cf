//! Convex body representations over R^{2n} with the complex structure
//! C^n ~ R^{2n}, and the primitive operations every other module builds on.
//!
//! Complex coordinates are interleaved: z_j occupies real slots (2j-2, 2j-1)
//! as (Re z_j, Im z_j).

pub mod body;
pub mod builtin;
pub mod grid;
pub mod linalg;
pub mod ops;
pub mod simplex;
pub mod symmetrize;
pub mod vector;

pub use body::{ConvexBody, Halfspace};
pub use builtin::{make_builtin, BodyDescriptor};
pub use grid::{DirectionGrid, GridGenerator};
pub use linalg::SymMatrix;
pub use ops::{contains, gauge, is_complex_body, polar, radius_bounds, support, support_table};
pub use symmetrize::complex_symmetrize;
pub use vector::rotate_complex;
