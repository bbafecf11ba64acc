//! Exact algebra for multivariate polynomial matrices: factorization of a
//! matrix `F` with respect to powers of `h = z_i - f`, and the decision of
//! equivalence between a square matrix and `diag(h, ..., h, 1, ..., 1)`,
//! with witness matrices that can be checked independently.

pub mod cli;
pub mod completion;
pub mod error;
pub mod factorizer;
pub mod groebner;
pub mod modsyz;
pub mod polymatrix;
pub mod polyring;

pub use error::{Error, Result};
pub use polymatrix::PolyMatrix;
pub use polyring::{gcd, Monomial, MonomialOrder, OrderKind, Polynomial};
