//! Problem model for dissipative control of linear systems with
//! time-varying general distributed delays.
//!
//! This crate turns user-level problem data — state/input/output/feed
//! coefficient matrices, delay bounds, and the two kernel bases that span
//! the distributed-delay kernels — into the validated, assembled constant
//! matrices that the synthesis and analysis layers consume:
//!
//! * [`classify_regime`] sorts the delay bounds into the interior regime
//!   (`0 < r₁ < r₂`) or one of the two degenerate regimes (`r₁ = 0` or
//!   `r₁ = r₂`), which determine how many delayed-state columns χ carries.
//! * [`DelaySystemData::validate`] checks every dimension against the
//!   bases, confirms the bases live on the right intervals, replays any
//!   raw kernel expressions against their coefficient factorizations, and
//!   verifies the basis ODE closures, producing a [`DelaySystem`].
//! * [`assemble_bold`] builds the constant row matrices of the
//!   closed-loop structured form over χ's named column layout, plus the
//!   integral-selector and boundary matrices used by the analysis
//!   conditions.
//! * [`supply_l2`] / [`supply_passivity`] / [`supply_custom`] construct
//!   the quadratic supply rate that fixes the dissipativity notion.

mod bold;
mod layout;
mod regime;
mod supply;
mod system;

pub use bold::{assemble_bold, BoldMatrices};
pub use layout::{ChiLayout, SLOT_G1, SLOT_G2A, SLOT_G2B, SLOT_W};
pub use regime::{
    classify_regime, DelayPosition, Regime, RegimeKind, SLOT_X, SLOT_X_R1, SLOT_X_R2,
};
pub use supply::{supply_custom, supply_l2, supply_passivity, Gamma, SupplyRate};
pub use system::{
    DelaySystem, DelaySystemData, RawKernels, CLOSURE_CHECK_TOL, KERNEL_CHECK_SAMPLES,
    KERNEL_CHECK_TOL,
};

use ddss_basis::BasisError;
use ddss_tensor_core::TensorError;

/// Errors raised while validating or assembling a delay-system model.
#[derive(Debug, thiserror::Error)]
pub enum ModelError {
    /// The delay bounds do not satisfy 0 ≤ r₁ ≤ r₂, r₂ > 0, finite.
    #[error("invalid delay bounds: r1 = {r1}, r2 = {r2} (need 0 <= r1 <= r2, r2 > 0, both finite)")]
    InvalidDelayBounds { r1: f64, r2: f64 },

    /// A matrix block has the wrong shape, or block dimensions disagree.
    #[error("dimension mismatch: {message}")]
    Dimension { message: String },

    /// The disturbance-attenuation level must be positive and finite.
    #[error("gamma must be positive and finite, got {gamma}")]
    NonPositiveGamma { gamma: f64 },

    /// The supply-rate block J₁ must be negative definite.
    #[error("J1 must be negative definite, but its largest eigenvalue is {max_eig:.3e}")]
    NotNegativeDefinite { max_eig: f64 },

    /// A raw kernel expression disagrees with its coefficient-times-basis
    /// factorization.
    #[error(
        "{kernel} deviates from its coefficient factorization by {deviation:.3e} at tau = {tau}"
    )]
    KernelMismatch {
        kernel: String,
        deviation: f64,
        tau: f64,
    },

    /// An underlying dense-matrix operation failed.
    #[error(transparent)]
    Tensor(#[from] TensorError),

    /// An underlying basis/quadrature operation failed.
    #[error(transparent)]
    Basis(#[from] BasisError),
}
