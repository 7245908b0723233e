//! Shared benchmark problems used across the workspace test suites.
//!
//! Two systems recur throughout the tests, the acceptance suite, and the
//! shipped example problem files:
//!
//! * the **analysis example** — a two-state system with no control input
//!   whose distributed state and output kernels are spanned by a basis of
//!   exponential-of-sinusoid functions; its reference disturbance-attenuation
//!   levels over several delay windows are recorded here as oracle tables;
//! * the **stabilization example** — a two-state open-loop-unstable system
//!   with distributed state, input, output and feedthrough kernels on both
//!   delay segments, used to exercise gain synthesis end to end, with the
//!   reference iteration results recorded as an oracle table.
//!
//! This crate exists so the numbers are transcribed exactly once. It is a
//! dev-dependency of the library crates and is never published.

use ddss_basis::{Expr, KernelBasis};
use ddss_model::{DelaySystemData, RawKernels};
use ddss_tensor_core::Mat;

/// Parses a list of expression strings; panics on malformed fixture data.
fn exprs(sources: &[&str]) -> Vec<Expr> {
    sources
        .iter()
        .map(|s| Expr::parse(s).expect("fixture expression must parse"))
        .collect()
}

/// Parses a rectangular kernel-expression matrix.
fn expr_matrix(rows: &[&[&str]]) -> Vec<Vec<Expr>> {
    rows.iter().map(|r| exprs(r)).collect()
}

/// Basis used by the analysis example on either delay segment: four
/// differentiable functions closed over three square-integrable companions.
fn analysis_basis(interval: (f64, f64)) -> KernelBasis {
    let f = exprs(&["1", "exp(sin(5*t))", "exp(cos(5*t))", "ln(2 - t)"]);
    let phi = exprs(&[
        "cos(5*t) * exp(sin(5*t))",
        "sin(5*t) * exp(cos(5*t))",
        "1 / (t - 2)",
    ]);
    let m = Mat::from_rows(&[
        &[0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        &[5.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        &[0.0, -5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        &[0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0],
    ]);
    KernelBasis::new(f, phi, m, interval).expect("analysis basis must build")
}

/// The analysis example over the delay window `[r1, r2]`: two states, one
/// disturbance channel, two outputs, no control input. The same kernel
/// coefficients act on both segments. Raw kernel expressions for the state
/// and output kernels are included so validation replays the factorization.
///
/// Degenerate windows are honored: `r1 = 0` collapses the first segment
/// (empty basis, zero-width coefficients, no raw kernels there) and
/// `r1 = r2` collapses the second.
pub fn analysis_example(r1: f64, r2: f64) -> DelaySystemData {
    let a2_full = Mat::from_rows(&[
        &[
            0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -0.4, 1.0, -0.1, -0.1, 0.3, 0.01, 0.0, 0.0,
        ],
        &[
            0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -1.0, 0.4, 0.0, 0.0, 0.0, -0.3, 1.0, 0.0,
        ],
    ]);
    let c2_full = Mat::from_rows(&[
        &[
            0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -0.11, 0.1, 0.2, 0.0, 0.0, 0.0, 0.0, -0.5,
        ],
        &[
            0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.1, -0.2, 0.0, 0.14, 0.0, 0.0,
        ],
    ]);
    let state_kernel: &[&[&str]] = &[
        &[
            "0.3*exp(cos(5*t)) - 0.1*exp(sin(5*t)) - 0.4",
            "0.01*exp(cos(5*t)) - 0.1*exp(sin(5*t)) + 1",
        ],
        &["ln(2 - t) - 1", "0.4 - 0.3*exp(cos(5*t))"],
    ];
    let output_kernel: &[&[&str]] = &[
        &[
            "0.2*exp(sin(5*t)) - 0.11",
            "0.1 - 0.5*ln(2 - t)",
        ],
        &[
            "0.1*exp(sin(5*t))",
            "0.14*exp(cos(5*t)) - 0.2*exp(sin(5*t))",
        ],
    ];
    let first_collapsed = r1 == 0.0;
    let second_collapsed = r1 == r2;
    let empty_coeff = (Mat::zeros(2, 0), Mat::zeros(2, 0), None);
    let (a2, c2, inner_kernels) = if first_collapsed {
        empty_coeff.clone()
    } else {
        (
            a2_full.clone(),
            c2_full.clone(),
            Some((expr_matrix(state_kernel), expr_matrix(output_kernel))),
        )
    };
    let (a3, c3, outer_kernels) = if second_collapsed {
        empty_coeff
    } else {
        (
            a2_full,
            c2_full,
            Some((expr_matrix(state_kernel), expr_matrix(output_kernel))),
        )
    };
    let input_cols1 = if first_collapsed { 0 } else { 7 };
    let input_cols2 = if second_collapsed { 0 } else { 7 };
    let basis1 = if first_collapsed {
        KernelBasis::empty((0.0, 0.0)).expect("empty basis must build")
    } else {
        analysis_basis((-r1, 0.0))
    };
    let basis2 = if second_collapsed {
        KernelBasis::empty((-r2, -r1)).expect("empty basis must build")
    } else {
        analysis_basis((-r2, -r1))
    };
    let (state_inner, output_inner) = inner_kernels.map_or((None, None), |(s, o)| (Some(s), Some(o)));
    let (state_outer, output_outer) = outer_kernels.map_or((None, None), |(s, o)| (Some(s), Some(o)));
    DelaySystemData {
        a1: Mat::from_rows(&[&[0.1, 0.0], &[0.0, -1.0]]),
        b1: Mat::zeros(2, 1),
        d1: Mat::col_vec(&[0.1, 0.2]),
        c1: Mat::from_rows(&[&[-0.1, 0.2], &[0.0, 0.1]]),
        b4: Mat::zeros(2, 1),
        d2: Mat::col_vec(&[0.12, 0.1]),
        a2,
        a3,
        b2k: Mat::zeros(2, input_cols1),
        b3k: Mat::zeros(2, input_cols2),
        c2,
        c3,
        b5k: Mat::zeros(2, input_cols1),
        b6k: Mat::zeros(2, input_cols2),
        r1,
        r2,
        basis1,
        basis2,
        kernels: RawKernels {
            state_inner,
            state_outer,
            output_inner,
            output_outer,
            ..RawKernels::default()
        },
    }
}

/// Reference attenuation levels for the analysis example over a family of
/// delay windows that narrows around its midpoint: `(r1, r2, gamma)`.
pub fn analysis_gamma_narrowing() -> Vec<(f64, f64, f64)> {
    vec![
        (0.98, 1.25, 0.5511),
        (1.0, 1.23, 0.51356),
        (1.02, 1.21, 0.48277),
        (1.04, 1.19, 0.45692),
    ]
}

/// Reference attenuation levels for the analysis example over a family of
/// delay windows of fixed width sliding upward: `(r1, r2, gamma)`. The last
/// window sits at the edge of feasibility.
pub fn analysis_gamma_sliding() -> Vec<(f64, f64, f64)> {
    vec![
        (0.8, 1.07, 0.35556),
        (1.0, 1.27, 0.59179),
        (1.2, 1.47, 1.7935),
        (1.32, 1.59, 25.9774),
    ]
}

/// First-segment basis of the stabilization example: three differentiable
/// functions over two square-integrable companions.
fn stabilization_basis1() -> KernelBasis {
    let f = exprs(&["1", "sin(exp(t))", "cos(exp(t))"]);
    let phi = exprs(&["exp(t) * cos(exp(t))", "exp(t) * sin(exp(t))"]);
    let m = Mat::from_rows(&[
        &[0.0, 0.0, 0.0, 0.0, 0.0],
        &[1.0, 0.0, 0.0, 0.0, 0.0],
        &[0.0, -1.0, 0.0, 0.0, 0.0],
    ]);
    KernelBasis::new(f, phi, m, (-0.5, 0.0)).expect("stabilization basis1 must build")
}

/// Second-segment basis of the stabilization example: the first-segment
/// functions plus a logarithmic term and its companion.
fn stabilization_basis2() -> KernelBasis {
    let f = exprs(&["1", "sin(exp(t))", "cos(exp(t))", "ln(2 - cos(t))"]);
    let phi = exprs(&[
        "exp(t) * cos(exp(t))",
        "exp(t) * sin(exp(t))",
        "sin(t) / (2 - cos(t))",
    ]);
    let m = Mat::from_rows(&[
        &[0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        &[0.0, -1.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        &[0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0],
    ]);
    KernelBasis::new(f, phi, m, (-1.0, -0.5)).expect("stabilization basis2 must build")
}

/// The stabilization example: two states, one control input, one
/// disturbance, two outputs, delay window `[0.5, 1]`, and distributed
/// state, input, output and feedthrough kernels on both segments. Raw
/// kernel expressions for all eight kernels are included.
pub fn stabilization_example() -> DelaySystemData {
    let a2 = Mat::from_rows(&[
        &[0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.1, -0.1, 0.2, 0.01],
        &[0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -0.4],
    ]);
    let a3 = Mat::from_rows(&[
        &[
            0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -0.2, 1.0, 0.1, -0.1, 0.2, 0.01, 0.0, 0.0,
        ],
        &[
            0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -1.2, 1.0, 0.0, 0.0, 0.0, -0.4, 1.0, 0.0,
        ],
    ]);
    let b2k = Mat::from_rows(&[&[0.0, 0.0, -0.1, 0.1, 0.0], &[0.0, 0.0, 0.1, 0.0, 0.12]]);
    let b3k = Mat::from_rows(&[
        &[0.0, 0.0, 0.0, -0.1, 0.1, 0.0, 0.0],
        &[0.0, 0.0, 0.0, 0.1, 0.0, 0.12, 0.0],
    ]);
    let c2 = Mat::from_rows(&[
        &[0.0, 0.0, 0.0, 0.0, 0.1, 0.1, 0.2, 0.0, 0.0, 0.0],
        &[0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -0.2, 0.3, 0.0, -0.1],
    ]);
    let c3 = Mat::from_rows(&[
        &[
            0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.1, 0.1, 0.2, 0.0, 0.0, 0.0, 0.0, 0.0,
        ],
        &[
            0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -0.2, 0.3, 0.0, -0.1, 0.0, 0.0,
        ],
    ]);
    let b5k = Mat::from_rows(&[&[0.0, 0.0, 0.0, 0.0, 0.0], &[0.0, 0.0, 0.1, -0.1, 0.0]]);
    let b6k = Mat::from_rows(&[
        &[0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        &[0.0, 0.0, 0.0, 0.1, -0.1, 0.0, 0.0],
    ]);
    let state_inner: &[&[&str]] = &[
        &[
            "0.2*cos(exp(t)) + 0.1*sin(exp(t))",
            "0.01*cos(exp(t)) - 0.1*sin(exp(t))",
        ],
        &["0", "-0.4*cos(exp(t))"],
    ];
    let state_outer: &[&[&str]] = &[
        &[
            "0.2*cos(exp(t)) + 0.1*sin(exp(t)) - 0.2",
            "0.01*cos(exp(t)) - 0.1*sin(exp(t)) + 1",
        ],
        &["ln(2 - cos(t)) - 1.2", "1 - 0.4*cos(exp(t))"],
    ];
    let input_kernel: &[&[&str]] = &[
        &["0.1*sin(exp(t)) - 0.1"],
        &["0.12*cos(exp(t)) + 0.1"],
    ];
    let output_kernel: &[&[&str]] = &[
        &["0.2*sin(exp(t)) + 0.1", "0.1"],
        &[
            "-0.2*sin(exp(t))",
            "0.3*sin(exp(t)) - 0.1*cos(exp(t))",
        ],
    ];
    let feed_kernel: &[&[&str]] = &[&["0"], &["0.1 - 0.1*sin(exp(t))"]];
    DelaySystemData {
        a1: Mat::from_rows(&[&[-1.0, -1.9], &[0.0, 0.1]]),
        b1: Mat::col_vec(&[0.0, 1.0]),
        d1: Mat::col_vec(&[0.01, 0.02]),
        c1: Mat::from_rows(&[&[0.1, 0.15], &[0.0, -0.2]]),
        b4: Mat::col_vec(&[0.0, 0.1]),
        d2: Mat::col_vec(&[0.1, 0.2]),
        a2,
        a3,
        b2k,
        b3k,
        c2,
        c3,
        b5k,
        b6k,
        r1: 0.5,
        r2: 1.0,
        basis1: stabilization_basis1(),
        basis2: stabilization_basis2(),
        kernels: RawKernels {
            state_inner: Some(expr_matrix(state_inner)),
            state_outer: Some(expr_matrix(state_outer)),
            input_inner: Some(expr_matrix(input_kernel)),
            input_outer: Some(expr_matrix(input_kernel)),
            output_inner: Some(expr_matrix(output_kernel)),
            output_outer: Some(expr_matrix(output_kernel)),
            feed_inner: Some(expr_matrix(feed_kernel)),
            feed_outer: Some(expr_matrix(feed_kernel)),
        },
    }
}

/// Reference synthesis-iteration results for the stabilization example:
/// `(iterations, gain, gamma)`.
pub fn stabilization_iteration_table() -> Vec<(usize, [f64; 2], f64)> {
    vec![
        (10, [0.4182, -2.7551], 0.36657),
        (20, [0.5011, -2.7108], 0.3607),
        (30, [0.5787, -2.6595], 0.3551),
        (40, [0.6505, -2.6021], 0.3498),
    ]
}
