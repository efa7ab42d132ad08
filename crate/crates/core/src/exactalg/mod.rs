//! Exact scalars, matrices, row reduction and realified coordinate charts.

pub mod linalg;
pub mod matrix;
pub mod rational;
pub mod scalar;
pub mod space;

pub use linalg::{
    congruent_diagonalize, inverse, kernel, rank, rank_kernel_image, solve, Inertia, RankKernelImage, Subspace,
    Vector,
};
pub use matrix::{Entry, ExactMatrix, Matrix, QMatrix};
pub use rational::Rational;
pub use scalar::{Field, Scalar};
pub use space::{Model, Space};
