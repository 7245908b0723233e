//! Structural operator behavior: empty-dimension semantics, direct sums,
//! named assembly, symmetric square roots, and layouts.

use ddss_tensor_core::{
    assemble_blocks, dsum, kron, sqrt_spd, sqrt_spd_clamped, sqrt_spd_with_inv, sy, BlockLayout,
    Mat, TensorError,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Maximum relative Frobenius error tolerated when reconstructing A from
/// its computed square root, for conditioning up to 1e6.
const SQRT_RECONSTRUCTION_TOL: f64 = 1e-10;

fn rand_mat(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Mat {
    Mat::from_fn(rows, cols, |_, _| rng.gen_range(-1.0..1.0))
}

/// Random SPD matrix with eigenvalues log-uniform in [lo, hi].
fn rand_spd(rng: &mut ChaCha8Rng, n: usize, lo: f64, hi: f64) -> Mat {
    let raw = rand_mat(rng, n, n);
    let qr = raw.to_na().qr();
    let q = Mat::from_na(&qr.q());
    let mut d = Mat::zeros(n, n);
    for i in 0..n {
        let t: f64 = rng.gen_range(0.0..1.0);
        d.set(i, i, lo * (hi / lo).powf(t));
    }
    q.mul(&d).mul(&q.transpose()).symmetrize()
}

proptest! {
    /// sqrt_spd(A)·sqrt_spd(A) reconstructs A to 1e-10 relative Frobenius
    /// error for conditioning up to 1e6, and the root is symmetric.
    #[test]
    fn sqrt_roundtrip(n in 1usize..=8, seed in 0u64..500) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = rand_spd(&mut rng, n, 1e-3, 1e3);
        let s = sqrt_spd(&a).unwrap();
        prop_assert!(s.asymmetry() < 1e-12);
        let err = s.mul(&s).sub(&a).norm_fro() / a.norm_fro();
        prop_assert!(err < SQRT_RECONSTRUCTION_TOL, "relative error {err}");
    }
}

#[test]
fn sqrt_of_identity_is_identity() {
    let s = sqrt_spd(&Mat::identity(5)).unwrap();
    assert!(s.max_abs_diff(&Mat::identity(5)) < 1e-14);
}

#[test]
fn sqrt_of_empty_is_empty() {
    let s = sqrt_spd(&Mat::zeros(0, 0)).unwrap();
    assert_eq!(s.shape(), (0, 0));
}

#[test]
fn sqrt_with_inv_are_mutual_inverses() {
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    let a = rand_spd(&mut rng, 6, 1e-2, 1e2);
    let (s, s_inv) = sqrt_spd_with_inv(&a).unwrap();
    assert!(s.mul(&s_inv).max_abs_diff(&Mat::identity(6)) < 1e-9);
}

#[test]
fn sqrt_rejects_indefinite_matrix() {
    let a = Mat::from_rows(&[&[1.0, 0.0], &[0.0, -1.0]]);
    match sqrt_spd(&a) {
        Err(TensorError::NotPositiveDefinite { min_eig, .. }) => {
            assert!((min_eig + 1.0).abs() < 1e-12);
        }
        other => panic!("expected NotPositiveDefinite, got {other:?}"),
    }
}

#[test]
fn sqrt_rejects_numerically_singular_matrix() {
    let a = Mat::from_rows(&[&[1.0, 0.0], &[0.0, 1e-14]]);
    assert!(matches!(
        sqrt_spd(&a),
        Err(TensorError::NotPositiveDefinite { .. })
    ));
}

#[test]
fn clamped_sqrt_matches_strict_root_on_well_conditioned_input() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let a = rand_spd(&mut rng, 6, 1e-2, 1e2);
    let strict = sqrt_spd(&a).unwrap();
    let (s, s_inv, clamped) = sqrt_spd_clamped(&a).unwrap();
    assert_eq!(clamped, 0);
    assert!(s.max_abs_diff(&strict) < 1e-10 * a.max_abs());
    assert!(s.mul(&s_inv).max_abs_diff(&Mat::identity(6)) < 1e-9);
}

#[test]
fn clamped_sqrt_absorbs_noise_level_eigenvalues() {
    // Rotate diag(2, 1, 1e-16) into a dense frame: numerically singular, the
    // kind of Gram a rich smooth basis produces on a short interval. The
    // strict root must reject it; the clamped root must absorb it while
    // keeping the forward product faithful.
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    let raw = rand_mat(&mut rng, 3, 3);
    let q = Mat::from_na(&raw.to_na().qr().q());
    let mut d = Mat::zeros(3, 3);
    d.set(0, 0, 2.0);
    d.set(1, 1, 1.0);
    d.set(2, 2, 1e-16);
    let a = q.mul(&d).mul(&q.transpose()).symmetrize();

    assert!(matches!(
        sqrt_spd(&a),
        Err(TensorError::NotPositiveDefinite { .. })
    ));

    let (s, s_inv, clamped) = sqrt_spd_clamped(&a).unwrap();
    assert_eq!(clamped, 1);
    assert!(s.asymmetry() < 1e-12);
    // The root reproduces the input up to the clamp threshold.
    assert!(s.mul(&s).max_abs_diff(&a) < 1e-12 * a.max_abs().max(1.0));
    // The returned pair is exactly mutually inverse (same eigenbasis).
    assert!(s.mul(&s_inv).max_abs_diff(&Mat::identity(3)) < 1e-9);
}

#[test]
fn clamped_sqrt_tolerates_noise_negative_eigenvalues() {
    let a = Mat::from_rows(&[&[1.0, 0.0], &[0.0, -1e-15]]);
    let (s, _, clamped) = sqrt_spd_clamped(&a).unwrap();
    assert_eq!(clamped, 1);
    assert!(s.mul(&s).max_abs_diff(&Mat::from_rows(&[&[1.0, 0.0], &[0.0, 0.0]])) < 1e-12);
}

#[test]
fn clamped_sqrt_still_rejects_genuine_indefiniteness() {
    let a = Mat::from_rows(&[&[1.0, 0.0], &[0.0, -1e-4]]);
    match sqrt_spd_clamped(&a) {
        Err(TensorError::NotPositiveDefinite { min_eig, .. }) => {
            assert!((min_eig + 1e-4).abs() < 1e-12);
        }
        other => panic!("expected NotPositiveDefinite, got {other:?}"),
    }
}

#[test]
fn clamped_sqrt_of_empty_is_empty() {
    let (s, s_inv, clamped) = sqrt_spd_clamped(&Mat::zeros(0, 0)).unwrap();
    assert_eq!(s.shape(), (0, 0));
    assert_eq!(s_inv.shape(), (0, 0));
    assert_eq!(clamped, 0);
}

#[test]
fn empty_product_is_zero_matrix() {
    let a = Mat::zeros(3, 0);
    let b = Mat::zeros(0, 2);
    let c = a.mul(&b);
    assert_eq!(c.shape(), (3, 2));
    assert_eq!(c.max_abs(), 0.0);
}

#[test]
fn kron_propagates_empty_dimensions() {
    let a = Mat::zeros(2, 0);
    let b = Mat::identity(3);
    assert_eq!(kron(&a, &b).shape(), (6, 0));
    assert_eq!(kron(&b, &a).shape(), (6, 0));
}

#[test]
fn dsum_absorbs_zero_size_blocks() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let a = rand_mat(&mut rng, 2, 3);
    let b = rand_mat(&mut rng, 1, 1);
    let with_empty = dsum(&[&a, &Mat::zeros(0, 0), &b]);
    let without = dsum(&[&a, &b]);
    assert_eq!(with_empty.shape(), (3, 4));
    assert!(with_empty.max_abs_diff(&without) == 0.0);
    assert_eq!(dsum(&[]).shape(), (0, 0));
}

#[test]
fn dsum_places_rectangular_blocks_on_the_diagonal() {
    let a = Mat::from_rows(&[&[1.0, 2.0]]);
    let b = Mat::from_rows(&[&[3.0], &[4.0]]);
    let s = dsum(&[&a, &b]);
    let expected = Mat::from_rows(&[&[1.0, 2.0, 0.0], &[0.0, 0.0, 3.0], &[0.0, 0.0, 4.0]]);
    assert!(s.max_abs_diff(&expected) == 0.0);
}

#[test]
fn sy_is_sum_with_transpose() {
    let a = Mat::from_rows(&[&[1.0, 2.0], &[3.0, 4.0]]);
    let expected = Mat::from_rows(&[&[2.0, 5.0], &[5.0, 8.0]]);
    assert!(sy(&a).max_abs_diff(&expected) == 0.0);
}

#[test]
fn assemble_blocks_matches_manual_stacking() {
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    let a = rand_mat(&mut rng, 2, 2);
    let b = rand_mat(&mut rng, 2, 3);
    let c = rand_mat(&mut rng, 1, 2);
    let d = rand_mat(&mut rng, 1, 3);
    let m = assemble_blocks(&[
        vec![("a", a.clone()), ("b", b.clone())],
        vec![("c", c.clone()), ("d", d.clone())],
    ])
    .unwrap();
    let expected = Mat::vstack(&[&Mat::hstack(&[&a, &b]), &Mat::hstack(&[&c, &d])]);
    assert!(m.max_abs_diff(&expected) == 0.0);
}

#[test]
fn assemble_blocks_reports_offending_slot_by_name() {
    let err = assemble_blocks(&[
        vec![("p11", Mat::zeros(2, 2)), ("p12", Mat::zeros(2, 3))],
        vec![("p21", Mat::zeros(1, 2)), ("p22", Mat::zeros(2, 3))],
    ])
    .unwrap_err();
    match err {
        TensorError::BlockShapeMismatch {
            slot,
            found_rows,
            expected_rows,
            ..
        } => {
            assert_eq!(slot, "p22");
            assert_eq!(found_rows, 2);
            assert_eq!(expected_rows, 1);
        }
        other => panic!("expected BlockShapeMismatch, got {other:?}"),
    }
}

#[test]
fn assemble_blocks_elides_zero_width_slots() {
    let a = Mat::from_rows(&[&[1.0, 2.0]]);
    let m = assemble_blocks(&[vec![
        ("gone", Mat::zeros(1, 0)),
        ("a", a.clone()),
        ("also_gone", Mat::zeros(1, 0)),
    ]])
    .unwrap();
    assert!(m.max_abs_diff(&a) == 0.0);
}

#[test]
fn block_layout_offsets_and_elision() {
    let layout = BlockLayout::new(&[("x_r1", 0), ("x_r2", 2), ("x0", 2), ("w", 1)]);
    assert_eq!(layout.total(), 5);
    assert_eq!(layout.width("x_r1"), 0);
    assert_eq!(layout.offset("x_r1"), 0);
    assert_eq!(layout.range("x_r2"), 0..2);
    assert_eq!(layout.range("x0"), 2..4);
    assert_eq!(layout.range("w"), 4..5);
    assert!(layout.contains("w"));
    assert!(!layout.contains("z"));
    let segs: Vec<_> = layout.segments().collect();
    assert_eq!(segs[2], ("x0", 2, 2));
}
