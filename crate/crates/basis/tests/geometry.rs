//! Gram-matrix geometry, ODE-closure, and kernel-decomposition checks on the
//! two bundled example bases (the analysis example and the stabilization
//! example).

use ddss_basis::{
    check_decomposition, check_ode_closure, compute_geometry, BasisError, Expr, KernelBasis,
    QuadSpec,
};
use ddss_tensor_core::{Mat, TensorError};

/// Agreement required between the default quadrature and a panel-doubled
/// refinement of the same Gram integrals.
const REFINEMENT_TOL: f64 = 1e-9;
/// Relative accuracy of SPD square roots and their inverses.
const SQRT_TOL: f64 = 1e-9;
/// Allowed asymmetry of computed Gram matrices.
const SYMMETRY_TOL: f64 = 1e-14;
/// Tolerance for the finite-difference ODE-closure check.
const ODE_TOL: f64 = 1e-6;
/// Tolerance for kernel-vs-coefficient decomposition checks.
const DECOMP_TOL: f64 = 1e-9;

fn exprs(sources: &[&str]) -> Vec<Expr> {
    sources.iter().map(|s| Expr::parse(s).unwrap()).collect()
}

/// Basis shared by both delay segments of the analysis example:
/// d = 4, δ = 3.
fn analysis_example_basis(interval: (f64, f64)) -> KernelBasis {
    let f = exprs(&["1", "exp(sin(5*t))", "exp(cos(5*t))", "ln(2 - t)"]);
    let phi = exprs(&[
        "cos(5*t)*exp(sin(5*t))",
        "sin(5*t)*exp(cos(5*t))",
        "1/(t - 2)",
    ]);
    let m = Mat::from_rows(&[
        &[0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        &[5.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        &[0.0, -5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        &[0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0],
    ]);
    KernelBasis::new(f, phi, m, interval).unwrap()
}

/// First-segment basis of the stabilization example: d = 3, δ = 2.
fn stabilization_example_basis_inner(interval: (f64, f64)) -> KernelBasis {
    let f = exprs(&["1", "sin(exp(t))", "cos(exp(t))"]);
    let phi = exprs(&["exp(t)*cos(exp(t))", "exp(t)*sin(exp(t))"]);
    let m = Mat::from_rows(&[
        &[0.0, 0.0, 0.0, 0.0, 0.0],
        &[1.0, 0.0, 0.0, 0.0, 0.0],
        &[0.0, -1.0, 0.0, 0.0, 0.0],
    ]);
    KernelBasis::new(f, phi, m, interval).unwrap()
}

/// Second-segment basis of the stabilization example: d = 4, δ = 3.
fn stabilization_example_basis_outer(interval: (f64, f64)) -> KernelBasis {
    let f = exprs(&["1", "sin(exp(t))", "cos(exp(t))", "ln(2 - cos(t))"]);
    let phi = exprs(&[
        "exp(t)*cos(exp(t))",
        "exp(t)*sin(exp(t))",
        "sin(t)/(2 - cos(t))",
    ]);
    let m = Mat::from_rows(&[
        &[0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        &[0.0, -1.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        &[0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0],
    ]);
    KernelBasis::new(f, phi, m, interval).unwrap()
}

/// Asserts the full set of geometry invariants for a non-empty basis and
/// returns the geometry so callers can pin case-specific expectations.
fn assert_geometry_sound(basis: &KernelBasis) -> ddss_basis::BasisGeometry {
    let spec = QuadSpec::default();
    let geo = compute_geometry(basis, &spec).unwrap();
    let dim = basis.dim();
    let d = basis.d();

    assert_eq!(geo.g.shape(), (dim, dim));
    assert_eq!(geo.f_gram.shape(), (d, d));
    assert!(geo.g.asymmetry() < SYMMETRY_TOL);
    assert!(geo.f_gram.asymmetry() < SYMMETRY_TOL);

    // The f-block of the stacked Gram is the f-Gram computed independently
    // (φ entries come first, so the f-block is the trailing principal block).
    let delta = basis.delta();
    let f_block = geo.g.block(delta, delta, d, d);
    assert!(f_block.max_abs_diff(&geo.f_gram) < SYMMETRY_TOL);

    // Square roots reproduce the Grams and invert cleanly.
    let scale_g = geo.g.max_abs().max(1.0);
    assert!(geo.sqrt_g.mul(&geo.sqrt_g).max_abs_diff(&geo.g) < SQRT_TOL * scale_g);
    assert!(
        geo.sqrt_g
            .mul(&geo.sqrt_g_inv)
            .max_abs_diff(&Mat::identity(dim))
            < SQRT_TOL
    );
    let scale_f = geo.f_gram.max_abs().max(1.0);
    assert!(geo.sqrt_f.mul(&geo.sqrt_f).max_abs_diff(&geo.f_gram) < SQRT_TOL * scale_f);
    assert!(
        geo.sqrt_f
            .mul(&geo.sqrt_f_inv)
            .max_abs_diff(&Mat::identity(d))
            < SQRT_TOL
    );

    // The f-Gram must be strictly positive definite (its inverse root is
    // load-bearing). The stacked Gram only has to be PSD up to quadrature
    // noise: several smooth functions on a short interval routinely produce
    // noise-level eigenvalues, which the clamped root absorbs.
    let (lo_g, _) = geo.g.sym_eig_bounds();
    let (lo_f, _) = geo.f_gram.sym_eig_bounds();
    assert!(
        lo_g > -1e-8 * scale_g,
        "stacked Gram min eigenvalue {lo_g} is negative beyond noise"
    );
    assert!(lo_f > 0.0, "f-Gram min eigenvalue {lo_f}");
    assert!(geo.clamped_g_eigenvalues <= dim);

    // Doubling the panel count must not move the integrals.
    let refined = compute_geometry(basis, &spec.refined()).unwrap();
    assert!(geo.g.max_abs_diff(&refined.g) < REFINEMENT_TOL * scale_g);
    assert!(geo.f_gram.max_abs_diff(&refined.f_gram) < REFINEMENT_TOL * scale_f);

    geo
}

#[test]
fn unit_basis_geometry_is_all_ones() {
    let basis = KernelBasis::new(
        exprs(&["1"]),
        Vec::new(),
        Mat::zeros(1, 1),
        (-1.0, 0.0),
    )
    .unwrap();
    let geo = compute_geometry(&basis, &QuadSpec::default()).unwrap();
    for m in [&geo.g, &geo.f_gram, &geo.sqrt_g, &geo.sqrt_g_inv, &geo.sqrt_f, &geo.sqrt_f_inv] {
        assert_eq!(m.shape(), (1, 1));
        assert!((m[(0, 0)] - 1.0).abs() < 1e-12);
    }
}

#[test]
fn empty_basis_geometry_is_all_empty() {
    let basis = KernelBasis::empty((-0.5, -0.5)).unwrap();
    let geo = compute_geometry(&basis, &QuadSpec::default()).unwrap();
    assert_eq!(geo.g.shape(), (0, 0));
    assert_eq!(geo.f_gram.shape(), (0, 0));
    assert_eq!(geo.sqrt_g.shape(), (0, 0));
    assert_eq!(geo.sqrt_f_inv.shape(), (0, 0));
}

#[test]
fn duplicated_function_is_rejected() {
    let basis = KernelBasis::new(
        exprs(&["1", "1"]),
        Vec::new(),
        Mat::zeros(2, 2),
        (-1.0, 0.0),
    )
    .unwrap();
    match compute_geometry(&basis, &QuadSpec::default()) {
        Err(BasisError::Tensor(TensorError::NotPositiveDefinite { .. })) => {}
        other => panic!("expected a positive-definiteness failure, got {other:?}"),
    }
}

#[test]
fn degenerate_interval_requires_empty_basis() {
    let err = KernelBasis::new(exprs(&["1"]), Vec::new(), Mat::zeros(1, 1), (-0.5, -0.5));
    assert!(matches!(err, Err(BasisError::Interval { .. })));
    assert!(KernelBasis::empty((-0.5, -0.5)).is_ok());
}

#[test]
fn closure_matrix_shape_is_validated() {
    let err = KernelBasis::new(exprs(&["1"]), Vec::new(), Mat::zeros(1, 3), (-1.0, 0.0));
    assert!(matches!(err, Err(BasisError::Dimension { .. })));
}

#[test]
fn analysis_example_geometry_is_sound() {
    let geo = assert_geometry_sound(&analysis_example_basis((-0.98, 0.0)));
    assert_eq!(geo.clamped_g_eigenvalues, 0);
}

#[test]
fn stabilization_example_geometry_is_sound() {
    let inner = assert_geometry_sound(&stabilization_example_basis_inner((-0.5, 0.0)));
    assert_eq!(inner.clamped_g_eigenvalues, 0);

    // Seven smooth functions on half a unit interval: the stacked Gram has
    // eigenvalues at quadrature-noise level, so the clamp must engage while
    // every other invariant still holds.
    let outer = assert_geometry_sound(&stabilization_example_basis_outer((-1.0, -0.5)));
    assert!(outer.clamped_g_eigenvalues >= 1);
}

#[test]
fn ode_closure_holds_for_example_bases() {
    for basis in [
        analysis_example_basis((-0.98, 0.0)),
        stabilization_example_basis_inner((-0.5, 0.0)),
        stabilization_example_basis_outer((-1.0, -0.5)),
    ] {
        let report = check_ode_closure(&basis, 201, ODE_TOL).unwrap();
        assert!(
            report.pass,
            "closure failed: deviation {} at τ = {} (component {})",
            report.max_deviation, report.worst_tau, report.worst_component
        );
    }
}

#[test]
fn broken_closure_matrix_is_detected_with_the_right_magnitude() {
    // Zero out the row that should produce d/dτ exp(sin 5τ) = 5·φ₁(τ); the
    // reported deviation must match max |5·cos(5τ)e^{sin 5τ}| over the
    // sample grid.
    let good = analysis_example_basis((-0.98, 0.0));
    let mut m = good.m_matrix().clone();
    for j in 0..m.cols() {
        m[(1, j)] = 0.0;
    }
    let broken = KernelBasis::new(
        good.f_exprs().to_vec(),
        good.phi_exprs().to_vec(),
        m,
        good.interval(),
    )
    .unwrap();

    let samples = 201;
    let report = check_ode_closure(&broken, samples, ODE_TOL).unwrap();
    assert!(!report.pass);
    assert_eq!(report.worst_component, 1);

    // Reproduce the sample grid to compute the expected worst deviation.
    let (a, b) = broken.interval();
    let h = (b - a) / 1e6;
    let (lo, hi) = (a + h, b - h);
    let mut expected: f64 = 0.0;
    for i in 0..samples {
        let tau = lo + i as f64 * (hi - lo) / (samples - 1) as f64;
        let phi1 = (5.0 * tau).cos() * (5.0 * tau).sin().exp();
        expected = expected.max((5.0 * phi1).abs());
    }
    assert!(
        (report.max_deviation - expected).abs() < 1e-6 * expected,
        "deviation {} vs expected {expected}",
        report.max_deviation
    );
}

/// Delay kernel of the analysis example (both segments share it) written out
/// entrywise, against its coefficient matrix.
#[test]
fn analysis_example_state_kernel_decomposes() {
    let kernel = vec![
        exprs(&[
            "0.3*exp(cos(5*t)) - 0.1*exp(sin(5*t)) - 0.4",
            "0.01*exp(cos(5*t)) - 0.1*exp(sin(5*t)) + 1",
        ]),
        exprs(&["ln(2 - t) - 1", "0.4 - 0.3*exp(cos(5*t))"]),
    ];
    let coeff = Mat::from_rows(&[
        &[0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -0.4, 1.0, -0.1, -0.1, 0.3, 0.01, 0.0, 0.0],
        &[0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -1.0, 0.4, 0.0, 0.0, 0.0, -0.3, 1.0, 0.0],
    ]);
    let basis = analysis_example_basis((-0.98, 0.0));
    let report = check_decomposition(&kernel, &coeff, &basis, 2, 101, DECOMP_TOL).unwrap();
    assert!(
        report.pass,
        "deviation {} at τ = {} entry ({}, {})",
        report.max_deviation, report.worst_tau, report.worst_row, report.worst_col
    );
}

/// Output kernel of the analysis example.
#[test]
fn analysis_example_output_kernel_decomposes() {
    let kernel = vec![
        exprs(&["0.2*exp(sin(5*t)) - 0.11", "0.1 - 0.5*ln(2 - t)"]),
        exprs(&["0.1*exp(sin(5*t))", "0.14*exp(cos(5*t)) - 0.2*exp(sin(5*t))"]),
    ];
    let coeff = Mat::from_rows(&[
        &[0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -0.11, 0.1, 0.2, 0.0, 0.0, 0.0, 0.0, -0.5],
        &[0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.1, -0.2, 0.0, 0.14, 0.0, 0.0],
    ]);
    let basis = analysis_example_basis((-0.98, 0.0));
    let report = check_decomposition(&kernel, &coeff, &basis, 2, 101, DECOMP_TOL).unwrap();
    assert!(report.pass, "deviation {}", report.max_deviation);
}

/// Outer-segment state kernel of the stabilization example.
#[test]
fn stabilization_example_outer_state_kernel_decomposes() {
    let kernel = vec![
        exprs(&[
            "0.2*cos(exp(t)) + 0.1*sin(exp(t)) - 0.2",
            "0.01*cos(exp(t)) - 0.1*sin(exp(t)) + 1",
        ]),
        exprs(&["ln(2 - cos(t)) - 1.2", "1 - 0.4*cos(exp(t))"]),
    ];
    let coeff = Mat::from_rows(&[
        &[0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -0.2, 1.0, 0.1, -0.1, 0.2, 0.01, 0.0, 0.0],
        &[0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -1.2, 1.0, 0.0, 0.0, 0.0, -0.4, 1.0, 0.0],
    ]);
    let basis = stabilization_example_basis_outer((-1.0, -0.5));
    let report = check_decomposition(&kernel, &coeff, &basis, 2, 101, DECOMP_TOL).unwrap();
    assert!(
        report.pass,
        "deviation {} at τ = {} entry ({}, {})",
        report.max_deviation, report.worst_tau, report.worst_row, report.worst_col
    );
}

/// Inner-segment state kernel of the stabilization example; pins the layout
/// of the trailing coefficient columns.
#[test]
fn stabilization_example_inner_state_kernel_decomposes() {
    let kernel = vec![
        exprs(&[
            "0.2*cos(exp(t)) + 0.1*sin(exp(t))",
            "0.01*cos(exp(t)) - 0.1*sin(exp(t))",
        ]),
        exprs(&["0", "-0.4*cos(exp(t))"]),
    ];
    let coeff = Mat::from_rows(&[
        &[0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.1, -0.1, 0.2, 0.01],
        &[0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -0.4],
    ]);
    let basis = stabilization_example_basis_inner((-0.5, 0.0));
    let report = check_decomposition(&kernel, &coeff, &basis, 2, 101, DECOMP_TOL).unwrap();
    assert!(report.pass, "deviation {}", report.max_deviation);
}

/// Input kernel of the stabilization example: exercises single-column blocks.
#[test]
fn stabilization_example_input_kernel_decomposes() {
    let kernel = vec![
        exprs(&["0.1*sin(exp(t)) - 0.1"]),
        exprs(&["0.12*cos(exp(t)) + 0.1"]),
    ];
    let coeff = Mat::from_rows(&[
        &[0.0, 0.0, -0.1, 0.1, 0.0],
        &[0.0, 0.0, 0.1, 0.0, 0.12],
    ]);
    let basis = stabilization_example_basis_inner((-0.5, 0.0));
    let report = check_decomposition(&kernel, &coeff, &basis, 2, 101, DECOMP_TOL).unwrap();
    assert!(report.pass, "deviation {}", report.max_deviation);
}

#[test]
fn perturbed_coefficient_fails_decomposition_by_its_size() {
    let kernel = vec![
        exprs(&["0.1*sin(exp(t)) - 0.1"]),
        exprs(&["0.12*cos(exp(t)) + 0.1"]),
    ];
    // Perturb the coefficient of the constant basis function by 0.1: the
    // pointwise deviation is then exactly 0.1 everywhere.
    let coeff = Mat::from_rows(&[
        &[0.0, 0.0, -0.2, 0.1, 0.0],
        &[0.0, 0.0, 0.1, 0.0, 0.12],
    ]);
    let basis = stabilization_example_basis_inner((-0.5, 0.0));
    let report = check_decomposition(&kernel, &coeff, &basis, 2, 101, DECOMP_TOL).unwrap();
    assert!(!report.pass);
    assert!(
        (report.max_deviation - 0.1).abs() < 1e-12,
        "deviation {}",
        report.max_deviation
    );
}

#[test]
fn decomposition_dimension_mismatches_are_rejected() {
    let basis = stabilization_example_basis_inner((-0.5, 0.0));
    let kernel = vec![exprs(&["1"]), exprs(&["1"])];
    // Wrong width parameter.
    assert!(matches!(
        check_decomposition(&kernel, &Mat::zeros(2, 5), &basis, 3, 10, DECOMP_TOL),
        Err(BasisError::Dimension { .. })
    ));
    // Wrong coefficient column count.
    assert!(matches!(
        check_decomposition(&kernel, &Mat::zeros(2, 4), &basis, 2, 10, DECOMP_TOL),
        Err(BasisError::Dimension { .. })
    ));
}
