//! Dense exact linear algebra over the rationals.
//!
//! Elimination is fraction-free: rational rows are scaled to integer rows and
//! reduced with Bareiss-style exact divisions, so intermediate entries stay
//! bounded by minors of the input instead of accumulating denominators.

mod basis;
mod charpoly;
mod matrix;
mod solve;
mod span;

pub use basis::{rank, BasisBuilder};
pub use charpoly::char_poly_coeffs;
pub use matrix::{dot, kron_vec, mat_vec, unit_vector, vec_mat, Matrix};
pub use solve::solve_right;
pub use span::SpanBuilder;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch { op: &'static str, left: (usize, usize), right: (usize, usize) },
    #[error("expected {expected} entries, found {found}")]
    BadLength { expected: usize, found: usize },
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("system has no solution")]
    NoSolution,
    #[error("solution is not unique")]
    NotUnique,
}

impl LinalgError {
    pub(crate) fn mismatch(op: &'static str, a: &Matrix, b: &Matrix) -> Self {
        LinalgError::DimensionMismatch { op, left: a.shape(), right: b.shape() }
    }
}
