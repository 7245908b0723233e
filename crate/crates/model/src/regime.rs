//! Delay-regime classification.
//!
//! The structured vector χ contains up to three instantaneous-state blocks:
//! x(t−r₁), x(t−r₂), and x(t). Which of them exist depends only on the delay
//! bounds: x(t−r₁) collapses onto x(t) when r₁ = 0, and x(t−r₂) collapses
//! onto x(t−r₁) when r₁ = r₂. Every matrix builder resolves a *delay
//! position* to the surviving slot through [`Regime`], so content whose slot
//! disappears migrates to the right place instead of being dropped.

use ddss_tensor_core::Mat;

use crate::ModelError;

/// The three admissible delay configurations (r₂ > 0 throughout).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RegimeKind {
    /// 0 < r₁ < r₂: both delayed-state blocks exist.
    Interior,
    /// r₁ = 0 < r₂: x(t−r₁) coincides with x(t).
    LowerZero,
    /// 0 < r₁ = r₂: x(t−r₂) coincides with x(t−r₁).
    Point,
}

/// A physically meaningful time argument of the state inside χ.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DelayPosition {
    /// x(t).
    Now,
    /// x(t−r₁).
    AtR1,
    /// x(t−r₂).
    AtR2,
}

/// Names of the state slots of χ, shared by every layout and builder.
pub const SLOT_X_R1: &str = "x_r1";
pub const SLOT_X_R2: &str = "x_r2";
pub const SLOT_X: &str = "x";

/// Classified delay regime: which state blocks of χ exist.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Regime {
    kind: RegimeKind,
}

/// Classifies the bounds of r(·) ∈ [r₁, r₂].
///
/// Requires r₂ > 0 and r₂ ≥ r₁ ≥ 0; in particular r₁ = r₂ = 0 (no delay at
/// all) is rejected.
pub fn classify_regime(r1: f64, r2: f64) -> Result<Regime, ModelError> {
    if !r1.is_finite() || !r2.is_finite() || r2 <= 0.0 || r1 < 0.0 || r1 > r2 {
        return Err(ModelError::InvalidDelayBounds { r1, r2 });
    }
    let kind = if r1 == 0.0 {
        RegimeKind::LowerZero
    } else if r1 == r2 {
        RegimeKind::Point
    } else {
        RegimeKind::Interior
    };
    Ok(Regime { kind })
}

impl Regime {
    pub fn kind(&self) -> RegimeKind {
        self.kind
    }

    /// Whether the x(t−r₁) block of χ exists (r₁ > 0).
    pub fn has_x_r1(&self) -> bool {
        self.kind != RegimeKind::LowerZero
    }

    /// Whether the x(t−r₂) block of χ exists (r₂ > r₁).
    pub fn has_x_r2(&self) -> bool {
        self.kind != RegimeKind::Point
    }

    /// Number of existing state blocks: 3 in the interior regime, 2 in the
    /// degenerate ones.
    pub fn three_hat(&self) -> usize {
        1 + self.has_x_r1() as usize + self.has_x_r2() as usize
    }

    /// Selector marking the x(t−r₂) block: `I_n` when the block exists,
    /// `0×n` when it collapsed onto x(t−r₁).
    pub fn one_marker(&self, n: usize) -> Mat {
        if self.has_x_r2() {
            Mat::identity(n)
        } else {
            Mat::zeros(0, n)
        }
    }

    /// Selector marking the x(t−r₁) block: `I_n` when the block exists,
    /// `0×n` when it collapsed onto x(t).
    pub fn one_hat_marker(&self, n: usize) -> Mat {
        if self.has_x_r1() {
            Mat::identity(n)
        } else {
            Mat::zeros(0, n)
        }
    }

    /// The χ slot holding the state at a delay position. Positions whose own
    /// slot is absent resolve to the slot they coincide with: x(t−r₁) → x(t)
    /// when r₁ = 0, and x(t−r₂) → x(t−r₁) when r₁ = r₂.
    pub fn state_slot(&self, position: DelayPosition) -> &'static str {
        match position {
            DelayPosition::Now => SLOT_X,
            DelayPosition::AtR1 => {
                if self.has_x_r1() {
                    SLOT_X_R1
                } else {
                    SLOT_X
                }
            }
            DelayPosition::AtR2 => {
                if self.has_x_r2() {
                    SLOT_X_R2
                } else {
                    SLOT_X_R1
                }
            }
        }
    }
}
