//! Cartan involutions, minimal-vector flows and Wick rotations of
//! pseudo-Riemannian Lie algebras.

pub mod algebra;
pub mod cartan;
pub mod catalog;
pub mod error;
pub mod format;
pub mod linalg;
pub mod metric;
pub mod minvec;
pub mod optimize;
pub mod scalar;
pub mod soliton;

pub use algebra::{LieAlgebra, LinearMap, MapRole};
pub use error::{Error, Result};
pub use linalg::Matrix;
pub use metric::{CurvatureData, Metric};
pub use scalar::Scalar;
