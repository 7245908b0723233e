//! Assembly of the constant matrices of the closed-loop structured form.
//!
//! With the Gram geometry of both kernel bases in hand, the distributed
//! delays disappear into constant row matrices over χ's column layout:
//! the state rows 𝐀 and input rows 𝐁₁, the output rows 𝐂 and 𝐁₂, the
//! integral-coordinate selector Î, and the scalar boundary matrix F̂ that
//! expresses d/dt of the kernel integrals through χ. Every block is placed
//! into a named slot; a delay position whose slot is absent in a degenerate
//! regime resolves to the surviving slot, so boundary terms merge instead
//! of misaligning.

use ddss_basis::BasisGeometry;
use ddss_tensor_core::{dsum, kron, Mat};

use crate::layout::{ChiLayout, SLOT_G1, SLOT_G2A, SLOT_G2B, SLOT_W};
use crate::regime::{DelayPosition, SLOT_X};
use crate::system::DelaySystem;
use crate::ModelError;

/// The assembled constant matrices of the closed-loop form.
#[derive(Clone, Debug)]
pub struct BoldMatrices {
    /// χ layout shared by all the row matrices.
    pub layout: ChiLayout,
    /// State rows over the state layout: n × L₀.
    pub bold_a: Mat,
    /// Input rows over the input layout: n × (3̂p + κp + q).
    pub bold_b1: Mat,
    /// Output rows over the state layout: m × L₀.
    pub bold_c: Mat,
    /// Output-input rows over the input layout: m × (3̂p + κp + q).
    pub bold_b2: Mat,
    /// Selector of the f-coordinates inside the integral blocks of χ,
    /// scaled by √F⁻¹ on the left and √G on the right: ϱ × κn.
    pub i_hat: Mat,
    /// Scalar boundary matrix of the kernel integrals: (d₁+d₂) × (3̂+κ).
    /// Kronecker-expanded by Iₙ wherever it is consumed.
    pub f_hat: Mat,
}

/// Assembles every constant matrix from the system and the two basis
/// geometries. The geometries must belong to the system's bases.
pub fn assemble_bold(
    sys: &DelaySystem,
    geo1: &BasisGeometry,
    geo2: &BasisGeometry,
) -> Result<BoldMatrices, ModelError> {
    let (n, m, p, q) = (sys.n(), sys.m(), sys.p(), sys.q());
    let (k1, k2) = (sys.k1(), sys.k2());
    let (d1, d2) = (sys.d1(), sys.d2());
    for (name, mat, dim) in [
        ("first-segment Gram", &geo1.g, k1),
        ("second-segment Gram", &geo2.g, k2),
        ("first-segment f-Gram", &geo1.f_gram, d1),
        ("second-segment f-Gram", &geo2.f_gram, d2),
    ] {
        if mat.shape() != (dim, dim) {
            return Err(ModelError::Dimension {
                message: format!(
                    "{name} has shape {}x{}, expected {dim}x{dim} from the system's bases",
                    mat.rows(),
                    mat.cols()
                ),
            });
        }
    }

    let regime = sys.regime();
    let layout = ChiLayout::new(regime, n, p, q, k1, k2);
    let data = sys.data();

    // Row matrices: place each coefficient into its slot. The two kernel
    // coefficient blocks absorb √G on the right per segment; the second
    // κ₂-stripe of χ (integral over [−r₂, −r(t)]) never enters the dynamics.
    let row_matrix = |rows: usize,
                      stride: usize,
                      cols: &ddss_tensor_core::BlockLayout,
                      now: &Mat,
                      seg1: &Mat,
                      seg2: &Mat,
                      w: &Mat|
     -> Mat {
        let mut out = Mat::zeros(rows, cols.total());
        out.add_block(0, cols.offset(SLOT_X), now);
        out.add_block(
            0,
            cols.offset(SLOT_G1),
            &seg1.mul(&kron(&geo1.sqrt_g, &Mat::identity(stride))),
        );
        out.add_block(
            0,
            cols.offset(SLOT_G2A),
            &seg2.mul(&kron(&geo2.sqrt_g, &Mat::identity(stride))),
        );
        out.add_block(0, cols.offset(SLOT_W), w);
        out
    };

    let state_cols = layout.state().clone();
    let input_cols = layout.input().clone();
    let bold_a = row_matrix(n, n, &state_cols, &data.a1, &data.a2, &data.a3, &data.d1);
    let bold_b1 = row_matrix(
        n,
        p,
        &input_cols,
        &data.b1,
        &data.b2k,
        &data.b3k,
        &Mat::zeros(n, q),
    );
    let bold_c = row_matrix(m, n, &state_cols, &data.c1, &data.c2, &data.c3, &data.d2);
    let bold_b2 = row_matrix(
        m,
        p,
        &input_cols,
        &data.b4,
        &data.b5k,
        &data.b6k,
        &Mat::zeros(m, q),
    );

    // Î: pick the f-coordinates out of each integral block — [O_{d,δ} I_d]
    // per segment, the second segment entering through both κ₂ stripes —
    // then scale by √F⁻¹ on the left and √G on the right, and expand by Iₙ.
    let pick1 = Mat::hstack(&[&Mat::zeros(d1, k1 - d1), &Mat::identity(d1)]);
    let pick2 = Mat::hstack(&[&Mat::zeros(d2, k2 - d2), &Mat::identity(d2)]);
    let sel1 = geo1.sqrt_f_inv.mul(&pick1).mul(&geo1.sqrt_g);
    let sel2 = geo2.sqrt_f_inv.mul(&pick2).mul(&geo2.sqrt_g);
    let scalar_i_hat = Mat::vstack(&[
        &Mat::hstack(&[&sel1, &Mat::zeros(d1, 2 * k2)]),
        &Mat::hstack(&[&Mat::zeros(d2, k1), &sel2, &sel2]),
    ]);
    let i_hat = kron(&scalar_i_hat, &Mat::identity(n));

    // F̂: d/dt of the (√G⁻¹-normalized) kernel integrals through χ. Each
    // basis contributes its boundary values at the segment ends and −M√G on
    // its own integral stripes; the boundary at −r(t) cancels between the
    // two κ₂ stripes, which is why both carry the same −√F₂⁻¹M₂√G₂ block.
    let scalar = layout.scalar();
    let mut f_hat = Mat::zeros(d1 + d2, scalar.total());
    if d1 > 0 {
        let m1_g = geo1.sqrt_f_inv.mul(&data.basis1.m_matrix().mul(&geo1.sqrt_g));
        let at_zero = geo1.sqrt_f_inv.mul(&data.basis1.f_at(0.0)?);
        let at_r1 = geo1.sqrt_f_inv.mul(&data.basis1.f_at(-sys.r1())?);
        f_hat.add_block(0, scalar.offset(SLOT_X), &at_zero);
        f_hat.add_block(
            0,
            scalar.offset(regime.state_slot(DelayPosition::AtR1)),
            &at_r1.neg(),
        );
        f_hat.add_block(0, scalar.offset(SLOT_G1), &m1_g.neg());
    }
    if d2 > 0 {
        let m2_g = geo2.sqrt_f_inv.mul(&data.basis2.m_matrix().mul(&geo2.sqrt_g));
        let at_r1 = geo2.sqrt_f_inv.mul(&data.basis2.f_at(-sys.r1())?);
        let at_r2 = geo2.sqrt_f_inv.mul(&data.basis2.f_at(-sys.r2())?);
        f_hat.add_block(
            d1,
            scalar.offset(regime.state_slot(DelayPosition::AtR1)),
            &at_r1,
        );
        f_hat.add_block(
            d1,
            scalar.offset(regime.state_slot(DelayPosition::AtR2)),
            &at_r2.neg(),
        );
        f_hat.add_block(d1, scalar.offset(SLOT_G2A), &m2_g.neg());
        f_hat.add_block(d1, scalar.offset(SLOT_G2B), &m2_g.neg());
    }

    Ok(BoldMatrices {
        layout,
        bold_a,
        bold_b1,
        bold_c,
        bold_b2,
        i_hat,
        f_hat,
    })
}

impl BoldMatrices {
    /// The gain expansion [(I_{3̂+κ} ⊗ K) ⊕ O_q] that maps χ's state layout
    /// to its input layout: applies K slot-wise, annihilates w.
    pub fn expand_gain(&self, k_gain: &Mat) -> Mat {
        let blocks = self.layout.scalar().total();
        let q = self.layout.state().width(SLOT_W);
        dsum(&[&kron(&Mat::identity(blocks), k_gain), &Mat::zeros(q, q)])
    }

    /// Closed-loop state rows 𝐀 + 𝐁₁[(I ⊗ K) ⊕ O_q] over the state layout.
    pub fn closed_loop_state(&self, k_gain: &Mat) -> Mat {
        self.bold_a.add(&self.bold_b1.mul(&self.expand_gain(k_gain)))
    }

    /// Closed-loop output rows Σ = 𝐂 + 𝐁₂[(I ⊗ K) ⊕ O_q] over the state
    /// layout.
    pub fn closed_loop_output(&self, k_gain: &Mat) -> Mat {
        self.bold_c.add(&self.bold_b2.mul(&self.expand_gain(k_gain)))
    }
}
