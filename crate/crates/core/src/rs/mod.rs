//! Reed-Solomon codes, their binary images and structured parity checks.

mod code;
mod idempotent;
mod mmatrix;
mod parity;

pub use code::{BinaryImage, CodeSpec};
pub use idempotent::{
    compute_idempotent, cyclotomic_coset, idempotent, idempotent_from_support, theta_one,
    IdempotentConvention,
};
pub use mmatrix::{compute_m_matrix, row_differences, ExponentTable, MMatrix};
pub use parity::{
    build_poly_parity_matrix, check_weight, derive_u_vectors, derive_u_vectors_with,
    PolyParityMatrix, UVectors,
};
