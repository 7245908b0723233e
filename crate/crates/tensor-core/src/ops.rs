//! Structural matrix operators: Kronecker products, commutation matrices,
//! symmetric square roots, direct sums, and named block assembly.

use crate::{Mat, TensorError};

/// Relative floor under which an eigenvalue disqualifies a matrix from
/// being treated as positive definite. The threshold is
/// `SPD_EIG_FLOOR · max(1, λ_max)`: purely relative for well-scaled
/// matrices, absolute for tiny ones so that numerically-zero Grams are
/// rejected instead of inverted into garbage.
///
/// The value separates genuine rank deficiency (relative eigenvalues at
/// float-noise level, ~1e-16) from legitimately ill-conditioned Gram
/// matrices: oscillatory basis families on short intervals reach relative
/// minimum eigenvalues of a few 1e-12 while remaining honestly positive
/// definite, so the floor sits a decade below that and three above noise.
pub const SPD_EIG_FLOOR: f64 = 1e-13;

/// Kronecker product `a ⊗ b`. Empty operands propagate their zero
/// dimension, e.g. `(2×0) ⊗ (3×3)` is `6×0`.
pub fn kron(a: &Mat, b: &Mat) -> Mat {
    let (ra, ca) = a.shape();
    let (rb, cb) = b.shape();
    let mut out = Mat::zeros(ra * rb, ca * cb);
    for i in 0..ra {
        for j in 0..ca {
            let s = a.get(i, j);
            if s == 0.0 {
                continue;
            }
            for k in 0..rb {
                for l in 0..cb {
                    out[(i * rb + k, j * cb + l)] = s * b.get(k, l);
                }
            }
        }
    }
    out
}

/// Commutation matrix `K_(n,d)`: the `nd×nd` permutation with
/// `K_(n,d) · vec(A) = vec(Aᵀ)` for `A ∈ ℝ^{n×d}` (column-major `vec`),
/// equivalently `K_(n,d) (f ⊗ I_n) = I_n ⊗ f` for `f ∈ ℝ^d`.
/// Either order being zero gives the `0×0` matrix.
pub fn commutation_matrix(n: usize, d: usize) -> Mat {
    let mut out = Mat::zeros(n * d, n * d);
    for i in 0..n {
        for j in 0..d {
            out[(i * d + j, j * n + i)] = 1.0;
        }
    }
    out
}

/// Symmetrization `A + Aᵀ` (not halved).
pub fn sy(a: &Mat) -> Mat {
    assert!(a.is_square(), "sy requires a square matrix");
    &a.transpose() + a
}

/// Direct sum `diag(m₁, …, m_k)`. Blocks may be rectangular; `0×0`
/// operands are absorbed. The empty list gives the `0×0` matrix.
pub fn dsum(mats: &[&Mat]) -> Mat {
    let rows = mats.iter().map(|m| m.rows()).sum();
    let cols = mats.iter().map(|m| m.cols()).sum();
    let mut out = Mat::zeros(rows, cols);
    let (mut r0, mut c0) = (0, 0);
    for m in mats {
        out.set_block(r0, c0, m);
        r0 += m.rows();
        c0 += m.cols();
    }
    out
}

/// Symmetric square root of a symmetric positive definite matrix, together
/// with its inverse, from a single eigendecomposition (so `S` and `S⁻¹`
/// are consistent to machine precision). `0×0` input yields `0×0` outputs.
pub fn sqrt_spd_with_inv(a: &Mat) -> Result<(Mat, Mat), TensorError> {
    assert!(a.is_square(), "sqrt_spd requires a square matrix");
    if a.rows() == 0 {
        return Ok((Mat::zeros(0, 0), Mat::zeros(0, 0)));
    }
    let (values, v) = crate::sym_eigen(a);
    let lambda_min = values[0];
    let lambda_max = values[values.len() - 1];
    let threshold = SPD_EIG_FLOOR * lambda_max.max(1.0);
    if lambda_min <= threshold {
        return Err(TensorError::NotPositiveDefinite {
            min_eig: lambda_min,
            threshold,
        });
    }
    let n = a.rows();
    let mut sqrt_diag = Mat::zeros(n, n);
    let mut inv_sqrt_diag = Mat::zeros(n, n);
    for i in 0..n {
        let s = values[i].sqrt();
        sqrt_diag[(i, i)] = s;
        inv_sqrt_diag[(i, i)] = 1.0 / s;
    }
    let vt = v.transpose();
    let sqrt = &(&v * &sqrt_diag) * &vt;
    let inv = &(&v * &inv_sqrt_diag) * &vt;
    Ok((sqrt.symmetrize(), inv.symmetrize()))
}

/// Symmetric square root of a symmetric positive definite matrix.
pub fn sqrt_spd(a: &Mat) -> Result<Mat, TensorError> {
    sqrt_spd_with_inv(a).map(|(s, _)| s)
}

/// How far below zero an eigenvalue may sit (relative to `max(1, λ_max)`)
/// before a matrix handed to [`sqrt_spd_clamped`] is treated as genuinely
/// indefinite rather than positive semidefinite with rounding noise.
/// Quadrature and accumulation errors perturb Gram matrices by far less
/// than this; a truly indefinite input overshoots it by many orders.
pub const INDEFINITE_TOL: f64 = 1e-8;

/// Symmetric square root, with inverse, of a matrix that is positive
/// definite in exact arithmetic but may be numerically rank deficient:
/// eigenvalues below `SPD_EIG_FLOOR · max(1, λ_max)` are raised to that
/// threshold before taking roots.
///
/// Large families of smooth functions on short intervals produce Gram
/// matrices whose smallest eigenvalues fall below double-precision
/// resolution while the matrix itself remains honestly positive definite.
/// Clamping keeps the root well defined and the returned pair exactly
/// mutually inverse (same eigenbasis), at the cost of perturbing the
/// square of the root by at most the clamp threshold — far inside every
/// tolerance used downstream. Only forward products of the root carry
/// certified information; the inverse is exposed for diagnostics.
///
/// Returns `(sqrt, sqrt_inv, clamped)` where `clamped` counts the raised
/// eigenvalues. Fails if an eigenvalue is negative beyond
/// [`INDEFINITE_TOL`], which no amount of rounding noise explains.
pub fn sqrt_spd_clamped(a: &Mat) -> Result<(Mat, Mat, usize), TensorError> {
    assert!(a.is_square(), "sqrt_spd requires a square matrix");
    if a.rows() == 0 {
        return Ok((Mat::zeros(0, 0), Mat::zeros(0, 0), 0));
    }
    let (values, v) = crate::sym_eigen(a);
    let lambda_min = values[0];
    let lambda_max = values[values.len() - 1];
    let scale = lambda_max.max(1.0);
    if lambda_min < -INDEFINITE_TOL * scale {
        return Err(TensorError::NotPositiveDefinite {
            min_eig: lambda_min,
            threshold: -INDEFINITE_TOL * scale,
        });
    }
    let clamp = SPD_EIG_FLOOR * scale;
    let n = a.rows();
    let mut clamped = 0;
    let mut sqrt_diag = Mat::zeros(n, n);
    let mut inv_sqrt_diag = Mat::zeros(n, n);
    for i in 0..n {
        let lam = if values[i] < clamp {
            clamped += 1;
            clamp
        } else {
            values[i]
        };
        let s = lam.sqrt();
        sqrt_diag[(i, i)] = s;
        inv_sqrt_diag[(i, i)] = 1.0 / s;
    }
    let vt = v.transpose();
    let sqrt = &(&v * &sqrt_diag) * &vt;
    let inv = &(&v * &inv_sqrt_diag) * &vt;
    Ok((sqrt.symmetrize(), inv.symmetrize(), clamped))
}

/// Assembles a grid of named blocks into one matrix. The first block of a
/// grid row fixes that row's height and the first block of a grid column
/// fixes its width; any later block that disagrees is reported by name.
/// Zero-sized blocks participate with zero extent, so marker-elided slots
/// assemble without special cases.
pub fn assemble_blocks(grid: &[Vec<(&str, Mat)>]) -> Result<Mat, TensorError> {
    let ncols_grid = grid.first().map_or(0, |r| r.len());
    for (i, row) in grid.iter().enumerate() {
        assert_eq!(row.len(), ncols_grid, "grid row {i} has {} blocks, expected {ncols_grid}", row.len());
    }
    let row_heights: Vec<usize> = grid.iter().map(|row| row[0].1.rows()).collect();
    let col_widths: Vec<usize> = (0..ncols_grid).map(|j| grid[0][j].1.cols()).collect();
    for (i, row) in grid.iter().enumerate() {
        for (j, (slot, m)) in row.iter().enumerate() {
            if m.rows() != row_heights[i] || m.cols() != col_widths[j] {
                return Err(TensorError::BlockShapeMismatch {
                    slot: slot.to_string(),
                    found_rows: m.rows(),
                    found_cols: m.cols(),
                    expected_rows: row_heights[i],
                    expected_cols: col_widths[j],
                });
            }
        }
    }
    let total_rows: usize = row_heights.iter().sum();
    let total_cols: usize = col_widths.iter().sum();
    let mut out = Mat::zeros(total_rows, total_cols);
    let mut r0 = 0;
    for (i, row) in grid.iter().enumerate() {
        let mut c0 = 0;
        for (j, (_, m)) in row.iter().enumerate() {
            out.set_block(r0, c0, m);
            c0 += col_widths[j];
        }
        r0 += row_heights[i];
    }
    Ok(out)
}
