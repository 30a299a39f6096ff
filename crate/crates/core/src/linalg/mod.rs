//! Exact linear algebra over scalar fields and over `k(t)`.

pub mod matrix;
pub mod polymatrix;
pub mod sparse;
pub mod system;

pub use matrix::{AffineSolution, Matrix};
pub use polymatrix::{DropSet, KtRank, PolyMatrix};
pub use system::{PolySystem, SystemSolution};
