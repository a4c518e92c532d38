//! Exact rational linear algebra: sparse vectors and matrices, reduced
//! row-echelon forms, kernels and subspace arithmetic.
//!
//! There is no floating point anywhere in this module; ranks and kernels are
//! exact, so no tolerance appears in any downstream comparison.

mod echelon;
mod matrix;
mod rational;
mod sparse;
mod subspace;

pub use echelon::{rank_of, Echelon};
pub use matrix::{kernel_basis, rank, rref, RatMatrix, Rref};
pub use rational::Rational;
pub use sparse::SparseVec;
pub use subspace::Subspace;
