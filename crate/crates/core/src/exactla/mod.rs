//! Exact linear algebra over the rationals.

mod linalg;
mod matrix;
mod scalar;

pub use linalg::{
    image, kernel_basis, nullity, quotient_homology, rank, solve, solve_many, Echelon, Homology,
    LinalgError, Quotient, Rref, Subspace,
};
pub use matrix::{Matrix, SparseRow};
pub use scalar::{ParseQError, Q};
