//! Expression algebra checked by evaluation: every combinator applied to
//! symbolic expressions must agree with the same operation applied
//! directly to the evaluated matrices.

use ddss_lmi_algebra::{AffineMatExpr, LmiError, Problem};
use ddss_tensor_core::{kron, Mat};

/// Deterministic decision-vector fill: x[k] = sin(3k + 1), bounded and
/// with no accidental zeros or symmetries.
fn fill(n: usize) -> Vec<f64> {
    (0..n).map(|k| ((3 * k + 1) as f64).sin()).collect()
}

#[test]
fn symmetric_variable_shares_entries() {
    let mut p = Problem::new();
    let s = p.sym_var(3);
    assert_eq!(p.n_decisions(), 6);
    assert_eq!(s.entry_index(2, 1), s.entry_index(1, 2));

    let x = fill(p.n_decisions());
    let val = s.expr().eval(&x).unwrap();
    assert_eq!(val.shape(), (3, 3));
    assert_eq!(val.asymmetry(), 0.0);
    for i in 0..3 {
        for j in 0..3 {
            assert_eq!(val.get(i, j), x[s.entry_index(i, j)]);
        }
    }
}

#[test]
fn rectangular_variable_is_column_major() {
    let mut p = Problem::new();
    let h = p.rect_var(2, 3);
    assert_eq!(p.n_decisions(), 6);
    assert_eq!(h.entry_index(1, 2), 5);

    let x = fill(p.n_decisions());
    let val = h.expr().eval(&x).unwrap();
    for j in 0..3 {
        for i in 0..2 {
            assert_eq!(val.get(i, j), x[j * 2 + i]);
        }
    }
}

#[test]
fn affine_arithmetic_matches_direct_evaluation() {
    let mut p = Problem::new();
    let a = p.sym_var(2);
    let b = p.rect_var(2, 2);
    let c = Mat::from_rows(&[&[1.0, -2.0], &[0.5, 3.0]]);
    let x = fill(p.n_decisions());

    let e = a
        .expr()
        .scale(2.0)
        .sub(&b.expr().t())
        .unwrap()
        .add(&AffineMatExpr::constant(c.clone()))
        .unwrap();
    let direct = a
        .expr()
        .eval(&x)
        .unwrap()
        .scale(2.0)
        .sub(&b.expr().eval(&x).unwrap().t())
        .add(&c);
    assert_eq!(e.eval(&x).unwrap().max_abs_diff(&direct), 0.0);
}

#[test]
fn congruence_and_symmetrization_match_direct_evaluation() {
    let mut p = Problem::new();
    let a = p.rect_var(2, 3);
    let m = Mat::from_rows(&[&[1.0, 2.0], &[-1.0, 0.5]]);
    let n = Mat::from_rows(&[&[0.3, 0.0], &[1.0, -2.0], &[0.7, 0.4]]);
    let x = fill(p.n_decisions());

    let e = a.expr().lmul(&m).unwrap().rmul(&n).unwrap().sy().unwrap();
    let inner = m.mul(&a.expr().eval(&x).unwrap()).mul(&n);
    let direct = inner.add(&inner.t());
    assert!(e.eval(&x).unwrap().max_abs_diff(&direct) < 1e-15);
}

#[test]
fn vec_stacks_columns() {
    let mut p = Problem::new();
    let h = p.rect_var(2, 2);
    let base = h
        .expr()
        .add(&AffineMatExpr::constant(Mat::from_rows(&[
            &[10.0, 30.0],
            &[20.0, 40.0],
        ])))
        .unwrap();
    let x = fill(p.n_decisions());

    let stacked = base.vec().eval(&x).unwrap();
    let full = base.eval(&x).unwrap();
    assert_eq!(stacked.shape(), (4, 1));
    let expect = [
        full.get(0, 0),
        full.get(1, 0),
        full.get(0, 1),
        full.get(1, 1),
    ];
    for (i, &v) in expect.iter().enumerate() {
        assert_eq!(stacked.get(i, 0), v);
    }
}

#[test]
fn assemble_matches_block_stacking() {
    let mut p = Problem::new();
    let a = p.sym_var(2);
    let b = p.rect_var(2, 3);
    let c = p.sym_var(3);
    let x = fill(p.n_decisions());

    let (ae, be, ce) = (a.expr(), b.expr(), c.expr());
    let bt = be.t();
    let grid = AffineMatExpr::assemble(&[&[&ae, &be], &[&bt, &ce]]).unwrap();
    assert_eq!(grid.shape(), (5, 5));

    let (av, bv, cv) = (
        ae.eval(&x).unwrap(),
        be.eval(&x).unwrap(),
        ce.eval(&x).unwrap(),
    );
    let top = Mat::hstack(&[&av, &bv]);
    let bottom = Mat::hstack(&[&bv.t(), &cv]);
    let direct = Mat::vstack(&[&top, &bottom]);
    assert_eq!(grid.eval(&x).unwrap().max_abs_diff(&direct), 0.0);
    assert_eq!(grid.eval(&x).unwrap().asymmetry(), 0.0);
}

#[test]
fn repeated_blocks_share_decisions() {
    let mut p = Problem::new();
    let a = p.sym_var(2);
    let x = fill(p.n_decisions());

    let lifted = a.expr().kron_id_left(3);
    assert_eq!(lifted.shape(), (6, 6));
    let direct = kron(&Mat::identity(3), &a.expr().eval(&x).unwrap());
    assert_eq!(lifted.eval(&x).unwrap().max_abs_diff(&direct), 0.0);

    // The lift introduces no new decisions: it reuses the original three.
    assert_eq!(lifted.support().count(), 3);
}

#[test]
fn scalar_template_scales_a_constant_matrix() {
    let mut p = Problem::new();
    let gamma = p.scalar_var();
    let template = Mat::from_rows(&[&[1.0, 0.0], &[0.0, -4.0]]);
    let x = vec![2.5];

    let e = gamma.scale_template(&template);
    assert_eq!(
        e.eval(&x).unwrap().max_abs_diff(&template.scale(2.5)),
        0.0
    );
}

#[test]
fn shape_errors_are_reported() {
    let mut p = Problem::new();
    let a = p.sym_var(2);
    let b = p.rect_var(2, 3);

    let err = a.expr().add(&b.expr()).unwrap_err();
    assert!(matches!(err, LmiError::Shape { .. }), "got {err:?}");

    let err = b.expr().sy().unwrap_err();
    assert!(err.to_string().contains("square"), "got {err}");

    let err = b.expr().lmul(&Mat::identity(3)).unwrap_err();
    assert!(matches!(err, LmiError::Shape { .. }), "got {err:?}");

    let (ae, be) = (a.expr(), b.expr());
    let err = AffineMatExpr::assemble(&[&[&ae, &be], &[&ae]]).unwrap_err();
    assert!(err.to_string().contains("blocks"), "got {err}");

    let err = a.expr().eval(&[0.0]).unwrap_err();
    assert!(err.to_string().contains("length"), "got {err}");
}
