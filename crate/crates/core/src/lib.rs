//! Exact computations with rank functions, nests and invariant means over
//! matrix rings `M_n(F_p)` and finite metric groups.

pub mod concentration;
pub mod error;
pub mod experiments;
pub mod field;
pub mod group;
pub mod json;
pub mod lattice;
pub mod linalg;
pub mod matrix;
pub mod nest;
pub mod nest_algebra;
pub mod nilpotency;
pub mod parallel;
pub mod poly;
pub mod rank;
pub mod rational;
pub mod span;

pub use error::{Error, Result};
pub use field::FieldSpec;
pub use matrix::MatrixFp;
pub use poly::PolyFp;
pub use rational::Q;
