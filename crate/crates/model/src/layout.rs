//! Column layouts of the structured vector χ.
//!
//! χ stacks, in this fixed order: x(t−r₁) (if present), x(t−r₂) (if
//! present), x(t), the first-segment kernel integral (κ₁n coordinates), the
//! second-segment kernel integral over [−r(t), −r₁] (κ₂n), the same over
//! [−r₂, −r(t)] (κ₂n), and the disturbance w (q). Absent blocks carry width
//! zero, so offsets never shift out of alignment across regimes.

use ddss_tensor_core::BlockLayout;

use crate::regime::{Regime, SLOT_X, SLOT_X_R1, SLOT_X_R2};

/// Names of the non-state slots of χ.
pub const SLOT_G1: &str = "g1";
pub const SLOT_G2A: &str = "g2a";
pub const SLOT_G2B: &str = "g2b";
pub const SLOT_W: &str = "w";

/// The slot structure of χ at the three strides used by the toolkit:
///
/// * [`state`](ChiLayout::state) — each state slot is `n` wide, the
///   disturbance slot `q` wide; total L₀ = 3̂n + κn + q. Column space of
///   the closed-loop row matrices and of the certificate inequality.
/// * [`input`](ChiLayout::input) — the same slots at stride `p` (the gain K
///   maps each n-wide slot to a p-wide one); total 3̂p + κp + q. Column
///   space of the input matrices.
/// * [`scalar`](ChiLayout::scalar) — one column per state slot and κᵢ per
///   integral slot, no disturbance; total 3̂ + κ. Column space of the
///   scalar boundary matrix that is Kronecker-expanded by Iₙ.
#[derive(Clone, Debug)]
pub struct ChiLayout {
    state: BlockLayout,
    input: BlockLayout,
    scalar: BlockLayout,
    regime: Regime,
}

impl ChiLayout {
    /// Builds the layout for a regime and the dimensions n (states),
    /// p (outputs of the gain), q (disturbances), κ₁ and κ₂ (kernel counts
    /// per segment).
    pub fn new(regime: Regime, n: usize, p: usize, q: usize, k1: usize, k2: usize) -> Self {
        let x_r1 = regime.has_x_r1() as usize;
        let x_r2 = regime.has_x_r2() as usize;
        let build = |stride: usize, w: usize| {
            BlockLayout::new(&[
                (SLOT_X_R1, x_r1 * stride),
                (SLOT_X_R2, x_r2 * stride),
                (SLOT_X, stride),
                (SLOT_G1, k1 * stride),
                (SLOT_G2A, k2 * stride),
                (SLOT_G2B, k2 * stride),
                (SLOT_W, w),
            ])
        };
        ChiLayout {
            state: build(n, q),
            input: build(p, q),
            scalar: build(1, 0),
            regime,
        }
    }

    pub fn state(&self) -> &BlockLayout {
        &self.state
    }

    pub fn input(&self) -> &BlockLayout {
        &self.input
    }

    pub fn scalar(&self) -> &BlockLayout {
        &self.scalar
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }
}
