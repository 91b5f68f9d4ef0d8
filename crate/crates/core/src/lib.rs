//! Exact symmetric-algebra operator calculus, decorated-graph values, and
//! certificates of pointwise generation by sections for tensor products.

pub mod certificate;
pub mod cli;
pub mod error;
pub mod graph;
pub mod macaulay;
pub mod matrix;
pub mod monomial;
pub mod poly;
pub mod problem;
pub mod scalar;
pub mod symops;

pub use error::{Error, Result};
pub use matrix::{matrix_product, matrix_rank, matrix_trace, ScalarMatrix};
pub use monomial::{monomial_basis, sym_dim, ExpVec};
pub use poly::SymPoly;
pub use scalar::Scalar;
pub use symops::{OperatorFactor, OperatorWord, PairingForm};
