//! Exact scalars and sparse linear algebra over the rationals.
//!
//! Everything downstream (singular vectors, invariant subspaces, decoupling
//! relations) reduces to rank, kernel and solve calls on matrices built
//! here, so elimination is deterministic: rows are inserted in index order
//! and each row pivots on its leftmost surviving column.

mod echelon;
mod scalar;
mod sparse;

pub use echelon::{determinant, kernel_basis, rank, solve, EchelonBasis};
pub use scalar::{binomial, factorial, falling, parse_scalar, rising, scalar_to_string, Scalar};
pub use sparse::{SparseMatrix, SparseVector};
