//! Validated problem data: a linear system with distributed delays whose
//! kernels are expressed through two finite kernel bases.
//!
//! The state equation is
//!
//! ẋ(t) = A₁x(t) + ∫₋ᵣ₍ₜ₎⁰ Ã₂(τ)x(t+τ)dτ + B₁u(t) + ∫₋ᵣ₍ₜ₎⁰ B̃₂(τ)u(t+τ)dτ + D₁w(t)
//!
//! with the matching output equation, where every kernel decomposes over the
//! first-segment basis on [−r₁, 0] and the second-segment basis on
//! [−r₂, −r₁]: Ã₂(τ) = A₂(f̂₁(τ) ⊗ Iₙ) on [−r₁, 0] and A₃(f̂₂(τ) ⊗ Iₙ) on
//! [−r₂, −r₁], and likewise (B₂, B₃), (C₂, C₃), (B₅, B₆) for the input,
//! output, and output-input kernels with I_p and Iₙ as appropriate.

use ddss_basis::{check_decomposition, check_ode_closure, DecompositionReport, Expr, KernelBasis};
use ddss_tensor_core::Mat;

use crate::regime::{classify_regime, Regime, RegimeKind};
use crate::ModelError;

/// Sample count used by construction-time kernel checks.
pub const KERNEL_CHECK_SAMPLES: usize = 201;
/// Deviation tolerance of construction-time kernel checks.
pub const KERNEL_CHECK_TOL: f64 = 1e-9;
/// Tolerance of the construction-time basis ODE-closure check.
pub const CLOSURE_CHECK_TOL: f64 = 1e-6;

/// Optional expression-level kernels. When a kernel is present, construction
/// verifies that the corresponding coefficient matrix reproduces it over the
/// segment's basis; absent kernels leave the coefficients trusted.
#[derive(Clone, Debug, Default)]
pub struct RawKernels {
    /// State kernel Ã₂ on [−r₁, 0] (n×n entries) — checked against `a2`.
    pub state_inner: Option<Vec<Vec<Expr>>>,
    /// State kernel Ã₂ on [−r₂, −r₁] — checked against `a3`.
    pub state_outer: Option<Vec<Vec<Expr>>>,
    /// Input kernel B̃₂ on [−r₁, 0] (n×p entries) — checked against `b2k`.
    pub input_inner: Option<Vec<Vec<Expr>>>,
    /// Input kernel B̃₂ on [−r₂, −r₁] — checked against `b3k`.
    pub input_outer: Option<Vec<Vec<Expr>>>,
    /// Output kernel C̃₂ on [−r₁, 0] (m×n entries) — checked against `c2`.
    pub output_inner: Option<Vec<Vec<Expr>>>,
    /// Output kernel C̃₂ on [−r₂, −r₁] — checked against `c3`.
    pub output_outer: Option<Vec<Vec<Expr>>>,
    /// Output-input kernel B̃₅ on [−r₁, 0] (m×p entries) — checked against `b5k`.
    pub feed_inner: Option<Vec<Vec<Expr>>>,
    /// Output-input kernel B̃₅ on [−r₂, −r₁] — checked against `b6k`.
    pub feed_outer: Option<Vec<Vec<Expr>>>,
}

/// Raw, unvalidated problem data. `validate` turns it into a [`DelaySystem`].
#[derive(Clone, Debug)]
pub struct DelaySystemData {
    pub a1: Mat,
    pub b1: Mat,
    pub d1: Mat,
    pub c1: Mat,
    pub b4: Mat,
    pub d2: Mat,
    /// First/second-segment coefficients of the state kernel.
    pub a2: Mat,
    pub a3: Mat,
    /// First/second-segment coefficients of the input kernel.
    pub b2k: Mat,
    pub b3k: Mat,
    /// First/second-segment coefficients of the output kernel.
    pub c2: Mat,
    pub c3: Mat,
    /// First/second-segment coefficients of the output-input kernel.
    pub b5k: Mat,
    pub b6k: Mat,
    pub r1: f64,
    pub r2: f64,
    pub basis1: KernelBasis,
    pub basis2: KernelBasis,
    pub kernels: RawKernels,
}

/// A validated delay system. All dimension identities hold; immutable.
#[derive(Clone, Debug)]
pub struct DelaySystem {
    data: DelaySystemData,
    regime: Regime,
    n: usize,
    m: usize,
    p: usize,
    q: usize,
}

impl DelaySystemData {
    /// Validates the delay bounds, the regime/basis consistency, every
    /// coefficient dimension, and — when raw kernels are supplied — the
    /// kernel decompositions and basis ODE closures.
    pub fn validate(self) -> Result<DelaySystem, ModelError> {
        let regime = classify_regime(self.r1, self.r2)?;

        let n = self.a1.rows();
        if n == 0 || !self.a1.is_square() {
            return Err(dim_err("a1", &self.a1, "n", "n"));
        }
        let p = self.b1.cols();
        let q = self.d1.cols();
        let m = self.c1.rows();
        if p == 0 || q == 0 || m == 0 {
            return Err(ModelError::Dimension {
                message: format!("all of m, p, q must be positive; got m = {m}, p = {p}, q = {q}"),
            });
        }

        let (d1, delta1) = (self.basis1.d(), self.basis1.delta());
        let (d2, delta2) = (self.basis2.d(), self.basis2.delta());
        if d1 + d2 == 0 {
            return Err(ModelError::Dimension {
                message: "the two kernel bases are both empty; at least one kernel function \
                          is required"
                    .to_string(),
            });
        }
        let k1 = d1 + delta1;
        let k2 = d2 + delta2;

        // Regime/basis consistency.
        if regime.kind() == RegimeKind::LowerZero && !self.basis1.is_empty() {
            return Err(ModelError::Dimension {
                message: "r1 = 0: the first-segment basis must be empty".to_string(),
            });
        }
        if regime.kind() == RegimeKind::Point && !self.basis2.is_empty() {
            return Err(ModelError::Dimension {
                message: "r1 = r2: the second-segment basis must be empty".to_string(),
            });
        }
        for (name, basis, lo, hi) in [
            ("basis1", &self.basis1, -self.r1, 0.0),
            ("basis2", &self.basis2, -self.r2, -self.r1),
        ] {
            let (a, b) = basis.interval();
            if a != lo || b != hi {
                return Err(ModelError::Dimension {
                    message: format!(
                        "{name} lives on [{a}, {b}], expected [{lo}, {hi}] from the delay bounds"
                    ),
                });
            }
        }

        // Coefficient dimensions.
        let checks: [(&str, &Mat, usize, usize); 14] = [
            ("a1", &self.a1, n, n),
            ("b1", &self.b1, n, p),
            ("d1", &self.d1, n, q),
            ("c1", &self.c1, m, n),
            ("b4", &self.b4, m, p),
            ("d2", &self.d2, m, q),
            ("a2", &self.a2, n, k1 * n),
            ("a3", &self.a3, n, k2 * n),
            ("b2k", &self.b2k, n, k1 * p),
            ("b3k", &self.b3k, n, k2 * p),
            ("c2", &self.c2, m, k1 * n),
            ("c3", &self.c3, m, k2 * n),
            ("b5k", &self.b5k, m, k1 * p),
            ("b6k", &self.b6k, m, k2 * p),
        ];
        for (name, mat, rows, cols) in checks {
            if mat.shape() != (rows, cols) {
                return Err(ModelError::Dimension {
                    message: format!(
                        "{name} has shape {}x{}, expected {rows}x{cols}",
                        mat.rows(),
                        mat.cols()
                    ),
                });
            }
        }

        let sys = DelaySystem {
            data: self,
            regime,
            n,
            m,
            p,
            q,
        };

        // Expression-level kernels, when present, must reproduce the
        // coefficients; the bases must also close under their ODE matrices.
        let reports = sys.kernel_reports(KERNEL_CHECK_SAMPLES, KERNEL_CHECK_TOL)?;
        for (name, report) in &reports {
            if !report.pass {
                return Err(ModelError::KernelMismatch {
                    kernel: name.clone(),
                    deviation: report.max_deviation,
                    tau: report.worst_tau,
                });
            }
        }
        for (name, basis) in [("basis1", &sys.data.basis1), ("basis2", &sys.data.basis2)] {
            let closure = check_ode_closure(basis, KERNEL_CHECK_SAMPLES, CLOSURE_CHECK_TOL)?;
            if !closure.pass {
                return Err(ModelError::Dimension {
                    message: format!(
                        "{name} does not close under its derivative matrix: deviation \
                         {:.3e} at τ = {} (component {})",
                        closure.max_deviation, closure.worst_tau, closure.worst_component
                    ),
                });
            }
        }

        Ok(sys)
    }
}

fn dim_err(name: &str, mat: &Mat, rows: &str, cols: &str) -> ModelError {
    ModelError::Dimension {
        message: format!(
            "{name} has shape {}x{}, expected {rows}x{cols}",
            mat.rows(),
            mat.cols()
        ),
    }
}

impl DelaySystem {
    pub fn data(&self) -> &DelaySystemData {
        &self.data
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    /// Kernel-function count of the first-segment basis.
    pub fn d1(&self) -> usize {
        self.data.basis1.d()
    }

    /// Kernel-function count of the second-segment basis.
    pub fn d2(&self) -> usize {
        self.data.basis2.d()
    }

    /// κ₁ = d₁ + δ₁.
    pub fn k1(&self) -> usize {
        self.data.basis1.dim()
    }

    /// κ₂ = d₂ + δ₂.
    pub fn k2(&self) -> usize {
        self.data.basis2.dim()
    }

    /// κ = κ₁ + 2κ₂: total kernel coordinates of χ (per state dimension).
    pub fn kappa(&self) -> usize {
        self.k1() + 2 * self.k2()
    }

    /// ϱ = (d₁ + d₂)n: dimension of the second Lyapunov-matrix block.
    pub fn varrho(&self) -> usize {
        (self.d1() + self.d2()) * self.n
    }

    pub fn r1(&self) -> f64 {
        self.data.r1
    }

    pub fn r2(&self) -> f64 {
        self.data.r2
    }

    /// r₃ = r₂ − r₁.
    pub fn r3(&self) -> f64 {
        self.data.r2 - self.data.r1
    }

    pub fn basis1(&self) -> &KernelBasis {
        &self.data.basis1
    }

    pub fn basis2(&self) -> &KernelBasis {
        &self.data.basis2
    }

    /// Runs every supplied expression-level kernel against its coefficient
    /// matrix, returning `(kernel name, report)` pairs.
    pub fn kernel_reports(
        &self,
        samples: usize,
        tol: f64,
    ) -> Result<Vec<(String, DecompositionReport)>, ModelError> {
        type KernelCase<'a> = (
            &'a str,
            &'a Option<Vec<Vec<Expr>>>,
            &'a Mat,
            &'a KernelBasis,
            usize,
        );
        let d = &self.data;
        let cases: [KernelCase; 8] = [
            ("state kernel on [-r1, 0]", &d.kernels.state_inner, &d.a2, &d.basis1, self.n),
            ("state kernel on [-r2, -r1]", &d.kernels.state_outer, &d.a3, &d.basis2, self.n),
            ("input kernel on [-r1, 0]", &d.kernels.input_inner, &d.b2k, &d.basis1, self.n),
            ("input kernel on [-r2, -r1]", &d.kernels.input_outer, &d.b3k, &d.basis2, self.n),
            ("output kernel on [-r1, 0]", &d.kernels.output_inner, &d.c2, &d.basis1, self.m),
            ("output kernel on [-r2, -r1]", &d.kernels.output_outer, &d.c3, &d.basis2, self.m),
            ("output-input kernel on [-r1, 0]", &d.kernels.feed_inner, &d.b5k, &d.basis1, self.m),
            ("output-input kernel on [-r2, -r1]", &d.kernels.feed_outer, &d.b6k, &d.basis2, self.m),
        ];
        let mut reports = Vec::new();
        for (name, kernel, coeff, basis, width) in cases {
            if let Some(kernel) = kernel {
                let report = check_decomposition(kernel, coeff, basis, width, samples, tol)?;
                reports.push((name.to_string(), report));
            }
        }
        Ok(reports)
    }
}
