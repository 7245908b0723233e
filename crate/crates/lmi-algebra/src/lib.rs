//! Affine matrix expressions over structured decision variables, and the
//! semidefinite-programming layer that solves definiteness constraints on
//! them.
//!
//! The crate has two halves:
//!
//! - [`expr`]: symbolic-free *affine* matrix expressions `C + Σⱼ xⱼ·Mⱼ`
//!   over a flat decision vector, with the block combinators (transpose,
//!   symmetrization, congruence, block assembly, Kronecker lifting) needed
//!   to assemble large structured matrix inequalities out of small named
//!   pieces. Variables are declared as symmetric, rectangular, or scalar
//!   blocks ([`MatVar`]) and addressed through [`VarHandle`]s.
//! - [`problem`]: a [`Problem`] collects definiteness constraints on such
//!   expressions ([`Sense`]) plus a linear objective, lowers everything to
//!   a conic program over scaled symmetric-triangle cones, and runs an
//!   interior-point solver. Strict inequalities carry an explicit margin
//!   so "barely touching zero" never passes as strict.
//!
//! The intended workflow: declare variables on a `Problem`, build each side
//! of a matrix inequality as an [`AffineMatExpr`] (starting from
//! [`VarHandle::expr`] and constants), [`Problem::constrain`] it, then read
//! matrices back out of the [`Solution`] with [`Solution::value_of`].

pub mod expr;
pub mod problem;

pub use expr::{AffineMatExpr, MatVar, VarHandle};
pub use problem::{Outcome, Problem, Sense, Solution, DEF_MARGIN_COEFF};

use thiserror::Error;

/// Errors from expression assembly or the solver bridge.
#[derive(Debug, Error)]
pub enum LmiError {
    /// Two expressions (or an expression and a matrix) have incompatible
    /// shapes for the requested operation.
    #[error("shape mismatch: {message}")]
    Shape { message: String },

    /// The problem is structurally unusable (no decisions, no constraints,
    /// or a constraint referencing undeclared decisions).
    #[error("ill-formed problem: {message}")]
    Structure { message: String },

    /// A definiteness constraint was given a matrix that is not symmetric.
    #[error("{which} is not symmetric (asymmetry {asymmetry:.3e})")]
    NotSymmetric { which: String, asymmetry: f64 },

    /// The interior-point solver failed outright (as opposed to proving
    /// infeasibility, which is a normal outcome).
    #[error("solver failure: {message}")]
    Solver { message: String },
}
