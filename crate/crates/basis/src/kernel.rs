//! Kernel basis functions and validation of their defining structure.
//!
//! A distributed-delay kernel is decomposed as a constant coefficient matrix
//! times `f̂(τ) ⊗ I`, where `f̂` stacks the L² part `φ` on top of the C¹ part
//! `f`, and `f` closes under differentiation: `df/dτ = M·f̂(τ)`.

use ddss_tensor_core::Mat;

use crate::expr::Expr;
use crate::BasisError;

/// A basis for one delay segment: `d` continuously differentiable functions
/// `f`, `δ` square-integrable functions `φ`, the closure matrix `M` of size
/// `d × (δ+d)`, and the segment interval.
///
/// The stacked vector is `f̂(τ) = [φ(τ); f(τ)]` — `φ` entries first.
#[derive(Clone, Debug)]
pub struct KernelBasis {
    f: Vec<Expr>,
    phi: Vec<Expr>,
    m_matrix: Mat,
    interval: (f64, f64),
}

impl KernelBasis {
    /// Builds a basis, validating the closure-matrix shape and the interval.
    ///
    /// A non-empty basis requires `a < b`; the empty basis (`d = δ = 0`) also
    /// accepts a degenerate interval `a == b`, which arises when a delay
    /// segment collapses to a point.
    pub fn new(
        f: Vec<Expr>,
        phi: Vec<Expr>,
        m_matrix: Mat,
        interval: (f64, f64),
    ) -> Result<Self, BasisError> {
        let d = f.len();
        let delta = phi.len();
        if m_matrix.shape() != (d, delta + d) {
            return Err(BasisError::Dimension {
                message: format!(
                    "closure matrix must be {d}x{} for d = {d}, delta = {delta}; got {}x{}",
                    delta + d,
                    m_matrix.rows(),
                    m_matrix.cols()
                ),
            });
        }
        let (a, b) = interval;
        if !a.is_finite() || !b.is_finite() {
            return Err(BasisError::Interval { a, b });
        }
        if d + delta > 0 && a >= b {
            return Err(BasisError::Interval { a, b });
        }
        if d + delta == 0 && a > b {
            return Err(BasisError::Interval { a, b });
        }
        Ok(KernelBasis {
            f,
            phi,
            m_matrix,
            interval,
        })
    }

    /// The empty basis on a possibly degenerate interval: no functions, a
    /// `0×0` closure matrix, and all-empty geometry downstream.
    pub fn empty(interval: (f64, f64)) -> Result<Self, BasisError> {
        KernelBasis::new(Vec::new(), Vec::new(), Mat::zeros(0, 0), interval)
    }

    /// Number of C¹ functions `d`.
    pub fn d(&self) -> usize {
        self.f.len()
    }

    /// Number of L² functions `δ`.
    pub fn delta(&self) -> usize {
        self.phi.len()
    }

    /// Total stacked dimension `δ + d`.
    pub fn dim(&self) -> usize {
        self.f.len() + self.phi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dim() == 0
    }

    pub fn interval(&self) -> (f64, f64) {
        self.interval
    }

    pub fn f_exprs(&self) -> &[Expr] {
        &self.f
    }

    pub fn phi_exprs(&self) -> &[Expr] {
        &self.phi
    }

    pub fn m_matrix(&self) -> &Mat {
        &self.m_matrix
    }

    /// Evaluates `f(τ)` as a `d × 1` column.
    pub fn f_at(&self, tau: f64) -> Result<Mat, BasisError> {
        let mut data = Vec::with_capacity(self.f.len());
        for e in &self.f {
            data.push(e.eval(tau)?);
        }
        Ok(Mat::col_vec(&data))
    }

    /// Evaluates the stacked `f̂(τ) = [φ(τ); f(τ)]` as a `(δ+d) × 1` column.
    pub fn f_hat_at(&self, tau: f64) -> Result<Mat, BasisError> {
        let mut data = Vec::with_capacity(self.dim());
        for e in &self.phi {
            data.push(e.eval(tau)?);
        }
        for e in &self.f {
            data.push(e.eval(tau)?);
        }
        Ok(Mat::col_vec(&data))
    }
}

/// Result of checking the closure property `df/dτ = M·f̂(τ)` by finite
/// differences.
#[derive(Clone, Debug)]
pub struct OdeClosureReport {
    /// Largest absolute deviation between the central difference of `f` and
    /// `M·f̂` over all sample points and components.
    pub max_deviation: f64,
    /// Sample point where the worst deviation occurred.
    pub worst_tau: f64,
    /// Component (row of `f`) with the worst deviation.
    pub worst_component: usize,
    pub tol: f64,
    pub pass: bool,
}

/// Checks `df/dτ = M·f̂(τ)` at `samples` equispaced points using central
/// differences with step `h = (b-a)/10⁶`.
///
/// The sample grid is pulled in by `h` at both ends so the stencil never
/// leaves the interval.
pub fn check_ode_closure(
    basis: &KernelBasis,
    samples: usize,
    tol: f64,
) -> Result<OdeClosureReport, BasisError> {
    if samples < 2 {
        return Err(BasisError::Dimension {
            message: format!("ODE closure check needs at least 2 samples, got {samples}"),
        });
    }
    let (a, b) = basis.interval();
    if basis.is_empty() || basis.d() == 0 {
        return Ok(OdeClosureReport {
            max_deviation: 0.0,
            worst_tau: a,
            worst_component: 0,
            tol,
            pass: true,
        });
    }
    let h = (b - a) / 1e6;
    let lo = a + h;
    let hi = b - h;
    let step = (hi - lo) / (samples - 1) as f64;

    let mut worst = OdeClosureReport {
        max_deviation: 0.0,
        worst_tau: lo,
        worst_component: 0,
        tol,
        pass: true,
    };
    for i in 0..samples {
        let tau = lo + i as f64 * step;
        let fd = basis.f_at(tau + h)?.sub(&basis.f_at(tau - h)?).scale(1.0 / (2.0 * h));
        let model = basis.m_matrix().mul(&basis.f_hat_at(tau)?);
        for row in 0..basis.d() {
            let dev = (fd[(row, 0)] - model[(row, 0)]).abs();
            if dev > worst.max_deviation {
                worst.max_deviation = dev;
                worst.worst_tau = tau;
                worst.worst_component = row;
            }
        }
    }
    worst.pass = worst.max_deviation <= tol;
    Ok(worst)
}

/// Result of checking a kernel against its coefficient decomposition.
#[derive(Clone, Debug)]
pub struct DecompositionReport {
    /// Largest absolute deviation between the kernel entries and
    /// `coeff·(f̂(τ) ⊗ I)` over all sample points.
    pub max_deviation: f64,
    pub worst_tau: f64,
    pub worst_row: usize,
    pub worst_col: usize,
    pub tol: f64,
    pub pass: bool,
}

/// Verifies `kernel(τ) = coeff·(f̂(τ) ⊗ I_c)` entrywise at `samples`
/// equispaced points of the basis interval, where `c` is the kernel's column
/// count.
///
/// `width` is the expected row count of both the kernel grid and `coeff`;
/// `coeff` must have `(δ+d)·c` columns.
pub fn check_decomposition(
    kernel: &[Vec<Expr>],
    coeff: &Mat,
    basis: &KernelBasis,
    width: usize,
    samples: usize,
    tol: f64,
) -> Result<DecompositionReport, BasisError> {
    if samples < 2 {
        return Err(BasisError::Dimension {
            message: format!("decomposition check needs at least 2 samples, got {samples}"),
        });
    }
    if kernel.len() != width || coeff.rows() != width {
        return Err(BasisError::Dimension {
            message: format!(
                "kernel grid has {} rows and coefficient matrix {}, expected {width}",
                kernel.len(),
                coeff.rows()
            ),
        });
    }
    let c = kernel.first().map_or(0, |row| row.len());
    if kernel.iter().any(|row| row.len() != c) {
        return Err(BasisError::Dimension {
            message: "kernel grid rows have unequal lengths".into(),
        });
    }
    let expected_cols = basis.dim() * c;
    if coeff.cols() != expected_cols {
        return Err(BasisError::Dimension {
            message: format!(
                "coefficient matrix has {} columns, expected (δ+d)·c = {expected_cols}",
                coeff.cols()
            ),
        });
    }

    let (a, b) = basis.interval();
    let step = (b - a) / (samples - 1) as f64;
    let mut report = DecompositionReport {
        max_deviation: 0.0,
        worst_tau: a,
        worst_row: 0,
        worst_col: 0,
        tol,
        pass: true,
    };
    for i in 0..samples {
        let tau = a + i as f64 * step;
        let f_hat = basis.f_hat_at(tau)?;
        // coeff is a row of (δ+d) blocks, each width×c; the k-th block is
        // weighted by f̂_k(τ). Equivalent to coeff·(f̂ ⊗ I_c).
        let mut reconstructed = Mat::zeros(width, c);
        for k in 0..basis.dim() {
            let block = coeff.block(0, k * c, width, c);
            reconstructed = reconstructed.add(&block.scale(f_hat[(k, 0)]));
        }
        for (r, row) in kernel.iter().enumerate() {
            for (col, e) in row.iter().enumerate() {
                let dev = (e.eval(tau)? - reconstructed[(r, col)]).abs();
                if dev > report.max_deviation {
                    report.max_deviation = dev;
                    report.worst_tau = tau;
                    report.worst_row = r;
                    report.worst_col = col;
                }
            }
        }
    }
    report.pass = report.max_deviation <= tol;
    Ok(report)
}
