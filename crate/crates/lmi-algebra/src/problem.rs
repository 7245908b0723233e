//! Semidefinite feasibility and minimization problems over matrix
//! variables, solved through an interior-point conic solver.
//!
//! Constraints are definiteness conditions on affine matrix expressions.
//! Strict conditions (`≺ 0`, `≻ 0`) are realized with an explicit margin:
//! `E ⪯ −εI` or `E ⪰ εI`, where ε defaults to a fixed fraction of the
//! constraint's constant-term magnitude and can be overridden globally —
//! a certificate that merely grazes zero is not accepted as strict.

use clarabel::algebra::CscMatrix;
use clarabel::solver::{
    DefaultSettings, DefaultSolver, IPSolver, SolverStatus,
    SupportedConeT::{self, PSDTriangleConeT},
};
use ddss_tensor_core::Mat;

use crate::expr::{AffineMatExpr, MatVar, VarHandle};
use crate::LmiError;

/// Relative strict-definiteness margin: ε = coefficient · max(1, ‖C‖_F).
pub const DEF_MARGIN_COEFF: f64 = 1e-7;

/// Asymmetry tolerance on constraint matrices, relative to their magnitude.
const SYMMETRY_TOL: f64 = 1e-9;

/// Definiteness sense of a matrix constraint.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    /// `E ⪯ −εI` — negative definite with margin.
    NegDefMargin,
    /// `E ⪰ εI` — positive definite with margin.
    PosDefMargin,
    /// `E ⪰ 0` — positive semidefinite, no margin.
    PosSemidef,
}

/// A solved problem's usable outcomes.
#[derive(Clone, Debug)]
pub enum Outcome {
    /// Solved to full accuracy.
    Solved(Solution),
    /// The solver stopped short of full accuracy (reduced precision or
    /// iteration cap) but returned its best iterate. Callers that accept a
    /// marginal certificate must re-verify the residuals themselves.
    Marginal(Solution),
    /// The constraints admit no solution.
    Infeasible,
}

impl Outcome {
    /// The solution, if one was produced at any accuracy.
    pub fn solution(&self) -> Option<&Solution> {
        match self {
            Outcome::Solved(s) | Outcome::Marginal(s) => Some(s),
            Outcome::Infeasible => None,
        }
    }

    pub fn is_feasible(&self) -> bool {
        self.solution().is_some()
    }
}

/// Decision values of a solved problem.
#[derive(Clone, Debug)]
pub struct Solution {
    x: Vec<f64>,
    /// Objective value reported by the solver (0 for pure feasibility).
    pub objective: f64,
}

impl Solution {
    /// The full decision vector.
    pub fn decisions(&self) -> &[f64] {
        &self.x
    }

    /// Reconstructs a matrix variable's value.
    pub fn value_of(&self, h: &VarHandle) -> Mat {
        let mut out = Mat::zeros(h.rows(), h.cols());
        for j in 0..h.cols() {
            for i in 0..h.rows() {
                out.set(i, j, self.x[h.entry_index(i, j)]);
            }
        }
        out
    }

    /// Value of a scalar variable.
    pub fn scalar_of(&self, h: &VarHandle) -> f64 {
        assert!(matches!(h.kind(), MatVar::Scalar), "not a scalar variable");
        self.x[h.entry_index(0, 0)]
    }
}

struct Constraint {
    expr: AffineMatExpr,
    sense: Sense,
}

/// A semidefinite program under construction.
#[derive(Default)]
pub struct Problem {
    n_decisions: usize,
    constraints: Vec<Constraint>,
    objective: Vec<(usize, f64)>,
    margin_override: Option<f64>,
    solver_tol: Option<f64>,
    max_iter: Option<u32>,
}

impl Problem {
    pub fn new() -> Self {
        Problem::default()
    }

    fn add_var(&mut self, kind: MatVar) -> VarHandle {
        let h = VarHandle {
            kind,
            offset: self.n_decisions,
        };
        self.n_decisions += kind.len();
        h
    }

    /// Declares a symmetric k×k variable.
    pub fn sym_var(&mut self, k: usize) -> VarHandle {
        self.add_var(MatVar::Sym(k))
    }

    /// Declares a dense r×c variable.
    pub fn rect_var(&mut self, r: usize, c: usize) -> VarHandle {
        self.add_var(MatVar::Rect(r, c))
    }

    /// Declares a scalar variable.
    pub fn scalar_var(&mut self) -> VarHandle {
        self.add_var(MatVar::Scalar)
    }

    pub fn n_decisions(&self) -> usize {
        self.n_decisions
    }

    /// Overrides the strict-definiteness margin for every margined
    /// constraint (absolute value).
    pub fn set_margin(&mut self, margin: f64) {
        self.margin_override = Some(margin);
    }

    /// Sets the interior-point feasibility/gap tolerance.
    pub fn set_solver_tol(&mut self, tol: f64) {
        self.solver_tol = Some(tol);
    }

    /// Caps the interior-point iteration count.
    pub fn set_max_iter(&mut self, max_iter: u32) {
        self.max_iter = Some(max_iter);
    }

    /// Adds `w · v` to the minimized objective for a scalar variable `v`.
    pub fn add_objective_scalar(&mut self, h: &VarHandle, w: f64) {
        assert!(matches!(h.kind(), MatVar::Scalar), "not a scalar variable");
        self.objective.push((h.entry_index(0, 0), w));
    }

    /// Adds `w · tr(V)` to the minimized objective for a matrix variable.
    pub fn add_objective_trace(&mut self, h: &VarHandle, w: f64) {
        assert_eq!(h.rows(), h.cols(), "trace objective needs a square variable");
        for i in 0..h.rows() {
            self.objective.push((h.entry_index(i, i), w));
        }
    }

    /// Adds a definiteness constraint on a symmetric-valued expression.
    ///
    /// The expression must be square and symmetric in every coefficient;
    /// asymmetry beyond a small relative tolerance is rejected rather than
    /// silently symmetrized.
    pub fn constrain(&mut self, expr: AffineMatExpr, sense: Sense) -> Result<(), LmiError> {
        if expr.rows() != expr.cols() {
            return Err(LmiError::Shape {
                message: format!(
                    "definiteness constraint needs a square expression, got {}x{}",
                    expr.rows(),
                    expr.cols()
                ),
            });
        }
        let check = |name: String, m: &Mat| -> Result<(), LmiError> {
            let asym = m.asymmetry();
            if asym > SYMMETRY_TOL * m.max_abs().max(1.0) {
                return Err(LmiError::NotSymmetric {
                    which: name,
                    asymmetry: asym,
                });
            }
            Ok(())
        };
        check("constant term".to_string(), &expr.constant)?;
        for (&j, m) in &expr.terms {
            check(format!("coefficient of decision {j}"), m)?;
        }
        if expr.support().any(|j| j >= self.n_decisions) {
            return Err(LmiError::Structure {
                message: "constraint touches a decision not declared on this problem".to_string(),
            });
        }
        self.constraints.push(Constraint { expr, sense });
        Ok(())
    }

    /// Margin applied to a constraint under the current policy.
    fn margin_for(&self, c: &Constraint) -> f64 {
        match c.sense {
            Sense::PosSemidef => 0.0,
            Sense::NegDefMargin | Sense::PosDefMargin => self
                .margin_override
                .unwrap_or_else(|| DEF_MARGIN_COEFF * c.expr.constant.norm_fro().max(1.0)),
        }
    }

    /// Solves the assembled problem.
    pub fn solve(&self) -> Result<Outcome, LmiError> {
        if self.n_decisions == 0 {
            return Err(LmiError::Structure {
                message: "the problem declares no decision variables".to_string(),
            });
        }
        if self.constraints.is_empty() {
            return Err(LmiError::Structure {
                message: "the problem has no constraints".to_string(),
            });
        }

        let n = self.n_decisions;
        let cone_rows: Vec<usize> = self
            .constraints
            .iter()
            .map(|c| svec_len(c.expr.rows()))
            .collect();
        let total_rows: usize = cone_rows.iter().sum();

        // s = b − A·x must equal svec(S) with S ⪰ 0, where S is the
        // sense-adjusted slack: S = ±E − ε·I. Hence b packs the adjusted
        // constant and A packs the negated adjusted coefficients.
        let mut b = Vec::with_capacity(total_rows);
        for c in &self.constraints {
            let margin = self.margin_for(c);
            let sign = constraint_sign(c.sense);
            let adjusted = c
                .expr
                .constant
                .scale(sign)
                .sub(&Mat::identity(c.expr.rows()).scale(margin));
            svec_into(&adjusted, &mut b);
        }

        let mut colptr = Vec::with_capacity(n + 1);
        let mut rowval = Vec::new();
        let mut nzval = Vec::new();
        let mut scratch = Vec::new();
        colptr.push(0);
        for j in 0..n {
            let mut row_offset = 0;
            for (c, &rows) in self.constraints.iter().zip(&cone_rows) {
                if let Some(coeff) = c.expr.terms.get(&j) {
                    let sign = constraint_sign(c.sense);
                    scratch.clear();
                    svec_into(&coeff.scale(-sign), &mut scratch);
                    for (r, &v) in scratch.iter().enumerate() {
                        if v != 0.0 {
                            rowval.push(row_offset + r);
                            nzval.push(v);
                        }
                    }
                }
                row_offset += rows;
            }
            colptr.push(rowval.len());
        }
        let a = CscMatrix::new(total_rows, n, colptr, rowval, nzval);

        let p = CscMatrix::new(n, n, vec![0; n + 1], Vec::new(), Vec::new());
        let mut q = vec![0.0; n];
        for &(idx, w) in &self.objective {
            q[idx] += w;
        }

        let cones: Vec<SupportedConeT<f64>> = self
            .constraints
            .iter()
            .map(|c| PSDTriangleConeT(c.expr.rows()))
            .collect();

        let mut settings = DefaultSettings {
            verbose: false,
            ..DefaultSettings::default()
        };
        if let Some(tol) = self.solver_tol {
            settings.tol_gap_abs = tol;
            settings.tol_gap_rel = tol;
            settings.tol_feas = tol;
        }
        if let Some(max_iter) = self.max_iter {
            settings.max_iter = max_iter;
        }

        let mut solver = DefaultSolver::new(&p, &q, &a, &b, &cones, settings);
        solver.solve();
        let status = solver.solution.status;
        let solution = || Solution {
            x: solver.solution.x.clone(),
            objective: solver.solution.obj_val,
        };
        match status {
            SolverStatus::Solved => Ok(Outcome::Solved(solution())),
            SolverStatus::AlmostSolved
            | SolverStatus::MaxIterations
            | SolverStatus::InsufficientProgress => {
                let s = solution();
                if s.x.iter().all(|v| v.is_finite()) {
                    Ok(Outcome::Marginal(s))
                } else {
                    Err(LmiError::Solver {
                        message: format!("solver stopped with status {status:?} and a non-finite iterate"),
                    })
                }
            }
            SolverStatus::PrimalInfeasible | SolverStatus::AlmostPrimalInfeasible => {
                Ok(Outcome::Infeasible)
            }
            SolverStatus::DualInfeasible | SolverStatus::AlmostDualInfeasible => {
                Err(LmiError::Solver {
                    message: "the objective is unbounded below on the constraint set".to_string(),
                })
            }
            other => Err(LmiError::Solver {
                message: format!("solver terminated with status {other:?}"),
            }),
        }
    }
}

fn constraint_sign(sense: Sense) -> f64 {
    match sense {
        Sense::NegDefMargin => -1.0,
        Sense::PosDefMargin | Sense::PosSemidef => 1.0,
    }
}

fn svec_len(d: usize) -> usize {
    d * (d + 1) / 2
}

/// Packs the upper triangle column-by-column, scaling off-diagonal entries
/// by √2 (the isometric symmetric-cone convention). Entries are read
/// symmetrized so tiny asymmetries below the constraint tolerance cannot
/// skew the cone data.
fn svec_into(m: &Mat, out: &mut Vec<f64>) {
    let sqrt2 = std::f64::consts::SQRT_2;
    for j in 0..m.cols() {
        for i in 0..=j {
            let v = 0.5 * (m.get(i, j) + m.get(j, i));
            out.push(if i == j { v } else { v * sqrt2 });
        }
    }
}
