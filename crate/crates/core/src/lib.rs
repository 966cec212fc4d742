//! Exact computation of algebraic Gelfand-Fuks cohomology of Lie algebras of
//! polynomial vector fields with coefficients in tensor modules.

pub mod algebra;
pub mod coefficients;
pub mod cochain;
pub mod derham;
pub mod error;
pub mod kunneth;
pub mod lie;
pub mod linalg;
pub mod sampling;
pub mod util;

pub use error::{Error, Result};

/// Arbitrary-precision rational numbers, the ground field of every computation.
pub type Rational = num_rational::BigRational;

/// Sparse vector over the rationals.
pub type QVec = linalg::SparseVec<Rational>;

/// Sparse matrix over the rationals.
pub type QMatrix = linalg::SparseMatrix<Rational>;
