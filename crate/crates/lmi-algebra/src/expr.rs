//! Matrix decision variables and affine matrix expressions.
//!
//! Every decision is a scalar; a matrix variable is a shaped view over a
//! contiguous range of scalars (upper triangle for symmetric variables). An
//! [`AffineMatExpr`] is a matrix-valued affine function of the decision
//! vector, stored as a constant plus one coefficient matrix per scalar
//! decision that appears — the form the semidefinite constraint assembler
//! consumes directly.

use std::collections::BTreeMap;

use ddss_tensor_core::Mat;

use crate::LmiError;

/// Shape of a matrix decision variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatVar {
    /// Symmetric k×k; decisions are the upper-triangle entries, stacked
    /// column by column.
    Sym(usize),
    /// Dense rectangular r×c; decisions stacked column-major.
    Rect(usize, usize),
    /// A single scalar.
    Scalar,
}

impl MatVar {
    pub fn rows(&self) -> usize {
        match *self {
            MatVar::Sym(k) => k,
            MatVar::Rect(r, _) => r,
            MatVar::Scalar => 1,
        }
    }

    pub fn cols(&self) -> usize {
        match *self {
            MatVar::Sym(k) => k,
            MatVar::Rect(_, c) => c,
            MatVar::Scalar => 1,
        }
    }

    /// Number of scalar decisions backing the variable.
    pub fn len(&self) -> usize {
        match *self {
            MatVar::Sym(k) => k * (k + 1) / 2,
            MatVar::Rect(r, c) => r * c,
            MatVar::Scalar => 1,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Handle to a declared variable: its shape and the offset of its first
/// scalar in the decision vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VarHandle {
    pub(crate) kind: MatVar,
    pub(crate) offset: usize,
}

impl VarHandle {
    pub fn kind(&self) -> MatVar {
        self.kind
    }

    pub fn rows(&self) -> usize {
        self.kind.rows()
    }

    pub fn cols(&self) -> usize {
        self.kind.cols()
    }

    /// Decision index of entry (i, j). For symmetric variables (i, j) and
    /// (j, i) share one decision.
    pub fn entry_index(&self, i: usize, j: usize) -> usize {
        assert!(i < self.rows() && j < self.cols(), "entry out of range");
        match self.kind {
            MatVar::Sym(_) => {
                let (i, j) = if i <= j { (i, j) } else { (j, i) };
                self.offset + j * (j + 1) / 2 + i
            }
            MatVar::Rect(r, _) => self.offset + j * r + i,
            MatVar::Scalar => self.offset,
        }
    }

    /// The expression whose value is the variable itself.
    pub fn expr(&self) -> AffineMatExpr {
        let (r, c) = (self.rows(), self.cols());
        let mut terms: BTreeMap<usize, Mat> = BTreeMap::new();
        for j in 0..c {
            for i in 0..r {
                let idx = self.entry_index(i, j);
                let coeff = terms.entry(idx).or_insert_with(|| Mat::zeros(r, c));
                coeff.set(i, j, 1.0);
            }
        }
        AffineMatExpr {
            rows: r,
            cols: c,
            constant: Mat::zeros(r, c),
            terms,
        }
    }

    /// The expression `v · template` where `v` is this scalar variable.
    pub fn scale_template(&self, template: &Mat) -> AffineMatExpr {
        assert!(
            matches!(self.kind, MatVar::Scalar),
            "scale_template needs a scalar variable"
        );
        let mut terms = BTreeMap::new();
        terms.insert(self.offset, template.clone());
        AffineMatExpr {
            rows: template.rows(),
            cols: template.cols(),
            constant: Mat::zeros(template.rows(), template.cols()),
            terms,
        }
    }
}

/// A matrix-valued affine expression `C + Σⱼ xⱼ·Mⱼ` over the scalar
/// decision vector.
#[derive(Clone, Debug)]
pub struct AffineMatExpr {
    pub(crate) rows: usize,
    pub(crate) cols: usize,
    pub(crate) constant: Mat,
    pub(crate) terms: BTreeMap<usize, Mat>,
}

impl AffineMatExpr {
    pub fn constant(mat: Mat) -> Self {
        AffineMatExpr {
            rows: mat.rows(),
            cols: mat.cols(),
            constant: mat,
            terms: BTreeMap::new(),
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::constant(Mat::zeros(rows, cols))
    }

    pub fn identity(k: usize) -> Self {
        Self::constant(Mat::identity(k))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    /// Indices of the scalar decisions this expression touches.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.terms.keys().copied()
    }

    /// Applies the same linear matrix map to the constant and every
    /// coefficient — the workhorse behind the shape combinators.
    fn map(&self, f: impl Fn(&Mat) -> Mat) -> Self {
        let constant = f(&self.constant);
        let (rows, cols) = constant.shape();
        AffineMatExpr {
            rows,
            cols,
            constant,
            terms: self.terms.iter().map(|(&j, m)| (j, f(m))).collect(),
        }
    }

    fn require_shape(&self, other: &Self, op: &str) -> Result<(), LmiError> {
        if self.shape() != other.shape() {
            return Err(LmiError::Shape {
                message: format!(
                    "{op} needs matching shapes, got {}x{} and {}x{}",
                    self.rows, self.cols, other.rows, other.cols
                ),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, LmiError> {
        self.require_shape(other, "add")?;
        let mut out = self.clone();
        out.constant = out.constant.add(&other.constant);
        for (&j, m) in &other.terms {
            match out.terms.get_mut(&j) {
                Some(existing) => *existing = existing.add(m),
                None => {
                    out.terms.insert(j, m.clone());
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LmiError> {
        self.add(&other.scale(-1.0))
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map(|m| m.scale(s))
    }

    pub fn neg(&self) -> Self {
        self.scale(-1.0)
    }

    pub fn t(&self) -> Self {
        self.map(|m| m.t())
    }

    /// The symmetrization `E + Eᵀ`.
    pub fn sy(&self) -> Result<Self, LmiError> {
        if self.rows != self.cols {
            return Err(LmiError::Shape {
                message: format!("sy needs a square expression, got {}x{}", self.rows, self.cols),
            });
        }
        self.add(&self.t())
    }

    /// Left multiplication by a constant: `M · E`.
    pub fn lmul(&self, m: &Mat) -> Result<Self, LmiError> {
        if m.cols() != self.rows {
            return Err(LmiError::Shape {
                message: format!(
                    "lmul: {}x{} times expression {}x{}",
                    m.rows(),
                    m.cols(),
                    self.rows,
                    self.cols
                ),
            });
        }
        Ok(self.map(|t| m.mul(t)))
    }

    /// Right multiplication by a constant: `E · M`.
    pub fn rmul(&self, m: &Mat) -> Result<Self, LmiError> {
        if self.cols != m.rows() {
            return Err(LmiError::Shape {
                message: format!(
                    "rmul: expression {}x{} times {}x{}",
                    self.rows,
                    self.cols,
                    m.rows(),
                    m.cols()
                ),
            });
        }
        Ok(self.map(|t| t.mul(m)))
    }

    /// Column-major vectorization: a (rows·cols)×1 expression.
    pub fn vec(&self) -> Self {
        self.map(|m| {
            let mut v = Mat::zeros(m.rows() * m.cols(), 1);
            for j in 0..m.cols() {
                for i in 0..m.rows() {
                    v.set(j * m.rows() + i, 0, m.get(i, j));
                }
            }
            v
        })
    }

    /// Assembles a block grid of expressions. Row heights and column widths
    /// must be consistent across the grid.
    pub fn assemble(grid: &[&[&AffineMatExpr]]) -> Result<Self, LmiError> {
        if grid.is_empty() || grid[0].is_empty() {
            return Err(LmiError::Shape {
                message: "assemble needs a non-empty grid".to_string(),
            });
        }
        let block_cols: Vec<usize> = grid[0].iter().map(|e| e.cols).collect();
        let mut block_rows = Vec::with_capacity(grid.len());
        for (r, row) in grid.iter().enumerate() {
            if row.len() != block_cols.len() {
                return Err(LmiError::Shape {
                    message: format!(
                        "assemble: row {r} has {} blocks, expected {}",
                        row.len(),
                        block_cols.len()
                    ),
                });
            }
            let height = row[0].rows;
            for (c, e) in row.iter().enumerate() {
                if e.rows != height || e.cols != block_cols[c] {
                    return Err(LmiError::Shape {
                        message: format!(
                            "assemble: block ({r}, {c}) is {}x{}, expected {}x{}",
                            e.rows, e.cols, height, block_cols[c]
                        ),
                    });
                }
            }
            block_rows.push(height);
        }

        let total_rows: usize = block_rows.iter().sum();
        let total_cols: usize = block_cols.iter().sum();
        let mut constant = Mat::zeros(total_rows, total_cols);
        let mut terms: BTreeMap<usize, Mat> = BTreeMap::new();
        let mut r0 = 0;
        for (r, row) in grid.iter().enumerate() {
            let mut c0 = 0;
            for e in row.iter() {
                constant.set_block(r0, c0, &e.constant);
                for (&j, m) in &e.terms {
                    terms
                        .entry(j)
                        .or_insert_with(|| Mat::zeros(total_rows, total_cols))
                        .add_block(r0, c0, m);
                }
                c0 += e.cols;
            }
            r0 += block_rows[r];
        }
        Ok(AffineMatExpr {
            rows: total_rows,
            cols: total_cols,
            constant,
            terms,
        })
    }

    /// Block-diagonal stack of expressions.
    pub fn block_diag(blocks: &[&AffineMatExpr]) -> Self {
        let total_rows: usize = blocks.iter().map(|e| e.rows).sum();
        let total_cols: usize = blocks.iter().map(|e| e.cols).sum();
        let mut constant = Mat::zeros(total_rows, total_cols);
        let mut terms: BTreeMap<usize, Mat> = BTreeMap::new();
        let (mut r0, mut c0) = (0, 0);
        for e in blocks {
            constant.set_block(r0, c0, &e.constant);
            for (&j, m) in &e.terms {
                terms
                    .entry(j)
                    .or_insert_with(|| Mat::zeros(total_rows, total_cols))
                    .add_block(r0, c0, m);
            }
            r0 += e.rows;
            c0 += e.cols;
        }
        AffineMatExpr {
            rows: total_rows,
            cols: total_cols,
            constant,
            terms,
        }
    }

    /// `I_k ⊗ E` — k diagonal copies sharing the same decisions.
    pub fn kron_id_left(&self, k: usize) -> Self {
        let copies: Vec<&AffineMatExpr> = std::iter::repeat_n(self, k).collect();
        Self::block_diag(&copies)
    }

    /// Substitutes a decision vector, returning the numeric value.
    pub fn eval(&self, x: &[f64]) -> Result<Mat, LmiError> {
        let mut out = self.constant.clone();
        for (&j, m) in &self.terms {
            let v = *x.get(j).ok_or_else(|| LmiError::Shape {
                message: format!(
                    "eval: expression touches decision {j} but the vector has length {}",
                    x.len()
                ),
            })?;
            out = out.add(&m.scale(v));
        }
        Ok(out)
    }
}
