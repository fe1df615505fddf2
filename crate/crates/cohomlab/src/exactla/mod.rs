//! Exact linear algebra over ℚ and ℚ(i).

mod matrix;
mod scalar;
mod subspace;

pub use matrix::{rref, Matrix};
pub use scalar::Scalar;
pub use subspace::{image, intersect, kernel, quotient_dim, sum, Subspace};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("not a subspace: the denominator is not contained in the numerator")]
    NotASubspace,
    #[error("matrix is singular")]
    Singular,
}
