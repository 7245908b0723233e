//! Gram matrices of a kernel basis and their SPD square roots.

use ddss_tensor_core::{sqrt_spd_clamped, sqrt_spd_with_inv, Mat};

use crate::kernel::KernelBasis;
use crate::quad::{quad_matrix, QuadSpec};
use crate::BasisError;

/// Gram matrices of a kernel basis over its interval, together with their
/// principal square roots and inverse square roots.
///
/// `g` is the Gram of the stacked `f̂ = [φ; f]` (size `(δ+d)²`); `f_gram` is
/// the Gram of `f` alone (size `d²`). For the empty basis every field is
/// `0×0`, which downstream block assembly elides.
///
/// The two Grams are rooted under different contracts:
///
/// * `f_gram` must be strictly positive definite — its *inverse* root scales
///   quantities throughout the certified conditions, so a near-singular
///   `f_gram` would make them meaningless. Linearly dependent `f` entries are
///   rejected outright.
/// * `g` often carries eigenvalues at quadrature-noise level when the basis
///   holds several smooth functions on a short interval, yet the certified
///   conditions only ever consume *forward* products of `sqrt_g` (never its
///   inverse). Noise-level eigenvalues are therefore clamped up to the SPD
///   floor before rooting; `clamped_g_eigenvalues` reports how many were
///   raised. `sqrt_g_inv` is exact for the clamped matrix and is used only
///   for diagnostics, never inside a certificate.
#[derive(Clone, Debug)]
pub struct BasisGeometry {
    pub g: Mat,
    pub f_gram: Mat,
    pub sqrt_g: Mat,
    pub sqrt_g_inv: Mat,
    pub sqrt_f: Mat,
    pub sqrt_f_inv: Mat,
    /// Number of eigenvalues of `g` raised to the SPD floor before rooting.
    /// Zero for a well-conditioned basis.
    pub clamped_g_eigenvalues: usize,
}

/// Computes the basis geometry by quadrature.
///
/// Fails with a positive-definiteness error when `f_gram` is singular (which
/// signals linearly dependent `f` entries on the interval) or when `g` is
/// indefinite beyond quadrature noise.
pub fn compute_geometry(basis: &KernelBasis, spec: &QuadSpec) -> Result<BasisGeometry, BasisError> {
    let (a, b) = basis.interval();

    let g = quad_matrix(
        &|tau| {
            let v = basis.f_hat_at(tau)?;
            Ok(v.mul(&v.t()))
        },
        a,
        b,
        spec,
    )?;
    let f_gram = quad_matrix(
        &|tau| {
            let v = basis.f_at(tau)?;
            Ok(v.mul(&v.t()))
        },
        a,
        b,
        spec,
    )?;

    let (sqrt_f, sqrt_f_inv) = sqrt_spd_with_inv(&f_gram)?;
    let (sqrt_g, sqrt_g_inv, clamped_g_eigenvalues) = sqrt_spd_clamped(&g)?;

    Ok(BasisGeometry {
        g,
        f_gram,
        sqrt_g,
        sqrt_g_inv,
        sqrt_f,
        sqrt_f_inv,
        clamped_g_eigenvalues,
    })
}
