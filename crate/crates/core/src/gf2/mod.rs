//! Bit-packed linear algebra over GF(2).

mod affine;
mod basis;
mod matrix;
mod sample;
mod subspace;
mod tensor;
mod vector;

pub use affine::AffineSubspace;
pub use basis::Basis;
pub use matrix::{rank, GF2Matrix};
pub use sample::{
    sample_basis, sample_invertible, sample_matrix, sample_nonzero_vector, sample_subspace,
    sample_vector,
};
pub use subspace::{gaussian_binomial, RrefEnumerator, Subspace};
pub use tensor::GF2Tensor;
pub use vector::GF2Vector;
