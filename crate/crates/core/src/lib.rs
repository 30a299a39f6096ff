//! Exact decision procedures for equivalences of noncommutative polynomials.

pub mod corpus;
pub mod equiv;
pub mod error;
pub mod eval;
pub mod ideal;
pub mod json;
pub mod linalg;
pub mod parse;
pub mod pencils;
pub mod poly;
pub mod scalar;
pub mod unipoly;
pub mod word;

pub use error::{Error, Result};
pub use parse::Context;
pub use poly::NcPoly;
pub use scalar::{Field, Scalar};
pub use unipoly::UniPoly;
pub use word::{Degree, Letter, Word};
