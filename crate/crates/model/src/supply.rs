//! Quadratic supply rates.
//!
//! The dissipation certificate bounds v̇ by the supply
//! s(z, w) = [z; w]ᵀ [J̃ᵀJ₁⁻¹J̃, J₂; *, J₃] [z; w] with J₁ ≺ 0. The L² and
//! passivity presets cover the standard performance criteria; custom rates
//! are accepted as long as J₁ is negative definite.

use ddss_tensor_core::Mat;

use crate::ModelError;

/// The L²-gain bound γ: a fixed number, or a scalar the solver minimizes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Gamma {
    Fixed(f64),
    Variable,
}

/// A quadratic supply rate s(z, w), kept in the factored (J₁, J̃, J₂, J₃)
/// form the certificate conditions consume.
///
/// In `gamma_mode`, `j1` and `j3` hold the γ = 1 templates −I_m and I_q and
/// the solver scales them by its γ decision scalar; otherwise all four
/// matrices are fully numeric.
#[derive(Clone, Debug)]
pub struct SupplyRate {
    pub j1: Mat,
    pub j_tilde: Mat,
    pub j2: Mat,
    pub j3: Mat,
    pub gamma_mode: bool,
}

/// L²-gain supply rate: J₁ = −γI_m, J̃ = I_m, J₂ = O, J₃ = γI_q, so that
/// dissipativity certifies an L² gain of at most γ.
pub fn supply_l2(gamma: Gamma, m: usize, q: usize) -> Result<SupplyRate, ModelError> {
    let g = match gamma {
        Gamma::Fixed(g) => {
            if g.is_nan() || g <= 0.0 || !g.is_finite() {
                return Err(ModelError::NonPositiveGamma { gamma: g });
            }
            g
        }
        Gamma::Variable => 1.0,
    };
    Ok(SupplyRate {
        j1: Mat::identity(m).scale(-g),
        j_tilde: Mat::identity(m),
        j2: Mat::zeros(m, q),
        j3: Mat::identity(q).scale(g),
        gamma_mode: matches!(gamma, Gamma::Variable),
    })
}

/// Passivity supply rate: J̃ = O, J₂ = I, J₃ = O, so that s(z, w) = 2zᵀw.
/// Requires m = q; `j1` only needs to be symmetric negative definite.
pub fn supply_passivity(j1: Mat, m: usize, q: usize) -> Result<SupplyRate, ModelError> {
    if m != q {
        return Err(ModelError::Dimension {
            message: format!("passivity requires m = q, got m = {m}, q = {q}"),
        });
    }
    check_j1(&j1, m)?;
    Ok(SupplyRate {
        j1,
        j_tilde: Mat::zeros(m, m),
        j2: Mat::identity(m),
        j3: Mat::zeros(q, q),
        gamma_mode: false,
    })
}

/// Fully custom supply rate; validates shapes, symmetry of J₁ and J₃, and
/// J₁ ≺ 0.
pub fn supply_custom(
    j1: Mat,
    j_tilde: Mat,
    j2: Mat,
    j3: Mat,
    m: usize,
    q: usize,
) -> Result<SupplyRate, ModelError> {
    check_j1(&j1, m)?;
    for (name, mat, rows, cols) in [
        ("j_tilde", &j_tilde, m, m),
        ("j2", &j2, m, q),
        ("j3", &j3, q, q),
    ] {
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
    if j3.asymmetry() > 1e-12 * j3.max_abs().max(1.0) {
        return Err(ModelError::Dimension {
            message: "j3 must be symmetric".to_string(),
        });
    }
    Ok(SupplyRate {
        j1,
        j_tilde,
        j2,
        j3,
        gamma_mode: false,
    })
}

fn check_j1(j1: &Mat, m: usize) -> Result<(), ModelError> {
    if j1.shape() != (m, m) {
        return Err(ModelError::Dimension {
            message: format!(
                "j1 has shape {}x{}, expected {m}x{m}",
                j1.rows(),
                j1.cols()
            ),
        });
    }
    if j1.asymmetry() > 1e-12 * j1.max_abs().max(1.0) {
        return Err(ModelError::Dimension {
            message: "j1 must be symmetric".to_string(),
        });
    }
    let (_, hi) = j1.sym_eig_bounds();
    if hi >= 0.0 {
        return Err(ModelError::NotNegativeDefinite { max_eig: hi });
    }
    Ok(())
}

impl SupplyRate {
    pub fn m(&self) -> usize {
        self.j1.rows()
    }

    pub fn q(&self) -> usize {
        self.j3.rows()
    }

    /// Evaluates s(z, w) = zᵀ(J̃ᵀJ₁⁻¹J̃)z + 2zᵀJ₂w + wᵀJ₃w numerically.
    ///
    /// Only valid on a fully numeric rate (`gamma_mode` templates carry
    /// γ = 1, which is almost never the γ the certificate achieved).
    pub fn evaluate(&self, z: &[f64], w: &[f64]) -> Result<f64, ModelError> {
        if self.gamma_mode {
            return Err(ModelError::Dimension {
                message: "supply rate with a variable γ cannot be evaluated numerically; \
                          fix γ first"
                    .to_string(),
            });
        }
        if z.len() != self.m() || w.len() != self.q() {
            return Err(ModelError::Dimension {
                message: format!(
                    "evaluate expects z of length {} and w of length {}, got {} and {}",
                    self.m(),
                    self.q(),
                    z.len(),
                    w.len()
                ),
            });
        }
        let zv = Mat::col_vec(z);
        let wv = Mat::col_vec(w);
        let jz = self.j_tilde.mul(&zv);
        let j1_inv_jz = self.j1.lu_solve(&jz)?;
        let quad_z = jz.t().mul(&j1_inv_jz).get(0, 0);
        let cross = 2.0 * zv.t().mul(&self.j2.mul(&wv)).get(0, 0);
        let quad_w = wv.t().mul(&self.j3.mul(&wv)).get(0, 0);
        Ok(quad_z + cross + quad_w)
    }

    /// The same rate with a concrete γ substituted for the variable one.
    pub fn with_gamma(&self, gamma: f64) -> Result<SupplyRate, ModelError> {
        if !self.gamma_mode {
            return Err(ModelError::Dimension {
                message: "supply rate already has fixed matrices".to_string(),
            });
        }
        supply_l2(Gamma::Fixed(gamma), self.m(), self.q())
    }
}
