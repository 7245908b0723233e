//! Dense matrix kernel for the delay-synthesis toolkit.
//!
//! Provides the row-major [`Mat`] type with first-class empty dimensions,
//! the structural operators used throughout the delay machinery (Kronecker
//! products, commutation matrices, symmetric square roots, direct sums,
//! named block assembly), and [`BlockLayout`] for addressing structured
//! row/column spaces by segment name.

mod eig;
mod layout;
mod mat;
mod ops;

pub use eig::sym_eigen;
pub use layout::BlockLayout;
pub use mat::Mat;
pub use ops::{
    assemble_blocks, commutation_matrix, dsum, kron, sqrt_spd, sqrt_spd_clamped,
    sqrt_spd_with_inv, sy, INDEFINITE_TOL, SPD_EIG_FLOOR,
};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum TensorError {
    #[error("matrix is not positive definite: min eigenvalue {min_eig:.3e} is below threshold {threshold:.3e}")]
    NotPositiveDefinite { min_eig: f64, threshold: f64 },
    #[error("matrix is singular to working precision")]
    Singular,
    #[error("block '{slot}' has shape {found_rows}x{found_cols}, expected {expected_rows}x{expected_cols}")]
    BlockShapeMismatch {
        slot: String,
        found_rows: usize,
        found_cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },
}
