//! Symmetric eigendecomposition via cyclic Jacobi rotations.
//!
//! Jacobi keeps the accumulated eigenvector matrix orthogonal to machine
//! precision, which the square-root reconstruction guarantee depends on.
//! All symmetric matrices in this toolkit are small (well under 10²), so
//! the O(n³)-per-sweep cost is irrelevant next to that accuracy.

use crate::Mat;

/// Off-diagonal Frobenius mass below this multiple of the total Frobenius
/// norm counts as diagonalized.
const JACOBI_CONVERGENCE: f64 = 1e-15;

const MAX_SWEEPS: usize = 100;

/// Eigendecomposition `A = V · diag(λ) · Vᵀ` of the symmetrized input.
/// Eigenvalues are ascending; column `i` of `V` pairs with `λ_i`.
pub fn sym_eigen(a: &Mat) -> (Vec<f64>, Mat) {
    assert!(a.is_square(), "sym_eigen requires a square matrix");
    let n = a.rows();
    if n == 0 {
        return (Vec::new(), Mat::zeros(0, 0));
    }
    let mut a = a.symmetrize();
    let mut v = Mat::identity(n);
    let norm = a.norm_fro().max(f64::MIN_POSITIVE);

    for _ in 0..MAX_SWEEPS {
        let mut off = 0.0_f64;
        for i in 0..n {
            for j in (i + 1)..n {
                off += 2.0 * a[(i, j)] * a[(i, j)];
            }
        }
        if off.sqrt() <= JACOBI_CONVERGENCE * norm {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let app = a[(p, p)];
                let aqq = a[(q, q)];
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (theta * theta + 1.0).sqrt())
                } else {
                    -1.0 / (-theta + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                a[(p, p)] = app - t * apq;
                a[(q, q)] = aqq + t * apq;
                a[(p, q)] = 0.0;
                a[(q, p)] = 0.0;
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(p, k)] = a[(k, p)];
                    a[(k, q)] = s * akp + c * akq;
                    a[(q, k)] = a[(k, q)];
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].partial_cmp(&a[(j, j)]).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| a[(i, i)]).collect();
    let vectors = Mat::from_fn(n, n, |i, j| v[(i, order[j])]);
    (values, vectors)
}
