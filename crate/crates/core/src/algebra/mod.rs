//! Exact arithmetic: scalars, sparse bigraded polynomials and dense linear algebra.

pub mod field;
pub mod forms;
pub mod matrix;
pub mod modular;
pub mod parse;
pub mod poly;

pub use field::{Field, Scalar, DEFAULT_PRIME};
pub use matrix::DenseMatrix;
pub use parse::parse_poly;
pub use poly::{graded_piece_dim, BiPoly, Monomial, Var};
