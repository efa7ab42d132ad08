//! Exact computations with Jordan pairs, their structure varieties and the
//! homotope triple systems attached to them.

pub mod error;
pub mod families;
pub mod exactalg;
pub mod ideals;
pub mod jordan;
pub mod liealg;
pub mod regularity;
pub mod report;
pub mod sampling;
pub mod svar;
pub mod tensor;

pub use error::{Error, Result};
pub use exactalg::{ExactMatrix, Field, QMatrix, Rational, Scalar, Space, Subspace};
pub use jordan::{JordanPair, PairKind, Side};
pub use liealg::LieAlgebraTensor;
pub use report::{Check, CheckReport, Coverage};
pub use svar::{Homotopy, StructuralPair};
pub use tensor::TripleTensor;
