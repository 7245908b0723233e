//! Basis functions for distributed-delay kernels: a serializable expression
//! language, composite Gauss–Legendre quadrature, Gram-matrix geometry, and
//! validation of the kernel decomposition structure.
//!
//! A distributed-delay kernel matrix is represented as a constant coefficient
//! matrix times `f̂(τ) ⊗ I`, where the stacked basis `f̂ = [φ; f]` consists of
//! a C¹ part `f` (whose Gram matrices enter the stability conditions) and an
//! L² part `φ` that closes the derivative: `df/dτ = M·f̂(τ)`. This crate
//! owns everything about `f̂` itself; the system matrices that consume it
//! live downstream.

mod expr;
mod geometry;
mod kernel;
mod quad;

pub use expr::{Expr, Func};
pub use geometry::{compute_geometry, BasisGeometry};
pub use kernel::{
    check_decomposition, check_ode_closure, DecompositionReport, KernelBasis, OdeClosureReport,
};
pub use quad::{quad_matrix, quad_matrix_sequential, QuadSpec};

use thiserror::Error;

/// Errors from parsing, evaluating, or integrating basis functions.
#[derive(Debug, Error)]
pub enum BasisError {
    /// Syntax error in an expression, with the byte offset into the source.
    #[error("syntax error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    /// Evaluation left the domain of a function (ln of a non-positive value,
    /// division by zero, or a non-finite result).
    #[error("domain error at t = {t}: {message}")]
    Domain { t: f64, message: String },

    /// Invalid integration or basis interval.
    #[error("invalid interval [{a}, {b}]")]
    Interval { a: f64, b: f64 },

    /// A Gram matrix failed the positive-definiteness check, or a matrix
    /// operation failed structurally.
    #[error(transparent)]
    Tensor(#[from] ddss_tensor_core::TensorError),

    /// Mismatched dimensions between a kernel grid, coefficient matrix, and
    /// basis.
    #[error("dimension mismatch: {message}")]
    Dimension { message: String },
}
