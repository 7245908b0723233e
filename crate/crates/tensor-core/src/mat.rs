//! Dense row-major matrix type with explicit empty-dimension semantics.
//!
//! Matrices with zero rows or zero columns are first-class values: a `k×0`
//! times `0×m` product is the `k×m` zero matrix, and zero-sized operands
//! vanish from concatenations and direct sums. The delay machinery leans on
//! this to collapse absent basis blocks without special-casing call sites.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use nalgebra::DMatrix;

/// Dense `f64` matrix stored row-major. Cloning is a deep copy.
#[derive(Clone, PartialEq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Mat {
    /// Zero matrix of the given shape. Either dimension may be zero.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    /// Identity matrix of order `n` (`0` gives the empty matrix).
    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    /// Builds from row-major data; `data.len()` must equal `rows * cols`.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<f64>) -> Self {
        assert_eq!(
            data.len(),
            rows * cols,
            "data length {} does not match shape {}x{}",
            data.len(),
            rows,
            cols
        );
        Mat { rows, cols, data }
    }

    /// Builds from a rectangular nested slice of rows.
    pub fn from_rows(rows: &[&[f64]]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(nrows * ncols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), ncols, "row {i} has length {}, expected {ncols}", r.len());
            data.extend_from_slice(r);
        }
        Mat {
            rows: nrows,
            cols: ncols,
            data,
        }
    }

    /// Builds entry-wise from a closure over `(row, col)`.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Mat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = f(i, j);
            }
        }
        m
    }

    /// `n×1` column vector from a slice.
    pub fn col_vec(v: &[f64]) -> Self {
        Mat::from_vec(v.len(), 1, v.to_vec())
    }

    /// Scalar as a `1×1` matrix.
    pub fn scalar(v: f64) -> Self {
        Mat::from_vec(1, 1, vec![v])
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

    /// True when either dimension is zero (the matrix holds no entries).
    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of {}x{}", self.rows, self.cols);
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of {}x{}", self.rows, self.cols);
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        out
    }

    /// Short alias for [`Mat::transpose`].
    pub fn t(&self) -> Mat {
        self.transpose()
    }

    pub fn add(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch in add: {:?} vs {:?}", self.shape(), rhs.shape());
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect();
        Mat::from_vec(self.rows, self.cols, data)
    }

    pub fn sub(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch in sub: {:?} vs {:?}", self.shape(), rhs.shape());
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect();
        Mat::from_vec(self.rows, self.cols, data)
    }

    pub fn scale(&self, s: f64) -> Mat {
        let data = self.data.iter().map(|a| a * s).collect();
        Mat::from_vec(self.rows, self.cols, data)
    }

    pub fn neg(&self) -> Mat {
        self.scale(-1.0)
    }

    /// Matrix product. An inner dimension of zero yields a zero matrix of
    /// the outer shape, matching the convention that an empty sum is zero.
    pub fn mul(&self, rhs: &Mat) -> Mat {
        assert_eq!(
            self.cols, rhs.rows,
            "inner dimension mismatch in mul: {:?} vs {:?}",
            self.shape(),
            rhs.shape()
        );
        let mut out = Mat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0.0 {
                    continue;
                }
                let lhs_row = i * rhs.cols;
                let rhs_row = k * rhs.cols;
                for j in 0..rhs.cols {
                    out.data[lhs_row + j] += a * rhs.data[rhs_row + j];
                }
            }
        }
        out
    }

    /// Copies the `nr×nc` block whose top-left entry is `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Mat {
        assert!(r0 + nr <= self.rows && c0 + nc <= self.cols,
            "block ({r0},{c0})+{nr}x{nc} exceeds {}x{}", self.rows, self.cols);
        Mat::from_fn(nr, nc, |i, j| self.data[(r0 + i) * self.cols + c0 + j])
    }

    /// Overwrites the block at `(r0, c0)` with `b`.
    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Mat) {
        assert!(r0 + b.rows <= self.rows && c0 + b.cols <= self.cols,
            "block ({r0},{c0})+{}x{} exceeds {}x{}", b.rows, b.cols, self.rows, self.cols);
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.data[(r0 + i) * self.cols + c0 + j] = b.data[i * b.cols + j];
            }
        }
    }

    /// Adds `b` into the block at `(r0, c0)`.
    pub fn add_block(&mut self, r0: usize, c0: usize, b: &Mat) {
        assert!(r0 + b.rows <= self.rows && c0 + b.cols <= self.cols,
            "block ({r0},{c0})+{}x{} exceeds {}x{}", b.rows, b.cols, self.rows, self.cols);
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.data[(r0 + i) * self.cols + c0 + j] += b.data[i * b.cols + j];
            }
        }
    }

    /// Horizontal concatenation; all parts must share the row count.
    /// Zero-column parts contribute nothing.
    pub fn hstack(parts: &[&Mat]) -> Mat {
        let rows = parts.first().map_or(0, |m| m.rows);
        assert!(parts.iter().all(|m| m.rows == rows), "hstack row mismatch");
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Mat::zeros(rows, cols);
        let mut c0 = 0;
        for m in parts {
            out.set_block(0, c0, m);
            c0 += m.cols;
        }
        out
    }

    /// Vertical concatenation; all parts must share the column count.
    pub fn vstack(parts: &[&Mat]) -> Mat {
        let cols = parts.first().map_or(0, |m| m.cols);
        assert!(parts.iter().all(|m| m.cols == cols), "vstack column mismatch");
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut out = Mat::zeros(rows, cols);
        let mut r0 = 0;
        for m in parts {
            out.set_block(r0, 0, m);
            r0 += m.rows;
        }
        out
    }

    pub fn norm_fro(&self) -> f64 {
        self.data.iter().map(|a| a * a).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0_f64, |acc, a| acc.max(a.abs()))
    }

    /// Largest absolute entry-wise difference; shapes must match.
    pub fn max_abs_diff(&self, rhs: &Mat) -> f64 {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch in max_abs_diff");
        self.data
            .iter()
            .zip(&rhs.data)
            .fold(0.0_f64, |acc, (a, b)| acc.max((a - b).abs()))
    }

    /// Maximum asymmetry `max |A_ij − A_ji|` (zero for empty matrices).
    pub fn asymmetry(&self) -> f64 {
        assert!(self.is_square(), "asymmetry requires a square matrix");
        let mut worst = 0.0_f64;
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        worst
    }

    /// `(A + Aᵀ)/2`.
    pub fn symmetrize(&self) -> Mat {
        assert!(self.is_square(), "symmetrize requires a square matrix");
        Mat::from_fn(self.rows, self.cols, |i, j| {
            0.5 * (self.data[i * self.cols + j] + self.data[j * self.cols + i])
        })
    }

    pub fn to_na(&self) -> DMatrix<f64> {
        DMatrix::from_row_slice(self.rows, self.cols, &self.data)
    }

    pub fn from_na(m: &DMatrix<f64>) -> Mat {
        Mat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
    }

    /// Eigenvalues of the symmetrized matrix, ascending. Empty for `0×0`.
    pub fn sym_eigenvalues(&self) -> Vec<f64> {
        crate::sym_eigen(self).0
    }

    /// `(λ_min, λ_max)` of the symmetrized matrix. A `0×0` matrix has no
    /// eigenvalues and reports `(+∞, −∞)` so that vacuous definiteness
    /// checks pass.
    pub fn sym_eig_bounds(&self) -> (f64, f64) {
        let vals = self.sym_eigenvalues();
        match (vals.first(), vals.last()) {
            (Some(lo), Some(hi)) => (*lo, *hi),
            _ => (f64::INFINITY, f64::NEG_INFINITY),
        }
    }

    /// Solves `self · X = rhs` via LU with partial pivoting.
    pub fn lu_solve(&self, rhs: &Mat) -> Result<Mat, crate::TensorError> {
        assert!(self.is_square(), "lu_solve requires a square matrix");
        assert_eq!(self.rows, rhs.rows, "rhs row count mismatch in lu_solve");
        if self.rows == 0 {
            return Ok(Mat::zeros(0, rhs.cols));
        }
        let lu = self.to_na().lu();
        match lu.solve(&rhs.to_na()) {
            Some(x) => Ok(Mat::from_na(&x)),
            None => Err(crate::TensorError::Singular),
        }
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows.min(12) {
            write!(f, "  ")?;
            for j in 0..self.cols.min(12) {
                write!(f, "{:>12.5e} ", self.get(i, j))?;
            }
            writeln!(f, "{}", if self.cols > 12 { "..." } else { "" })?;
        }
        if self.rows > 12 {
            writeln!(f, "  ...")?;
        }
        write!(f, "]")
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

// Binary operators over every owned/borrowed combination, so expressions like
// `kron(&a, &b) * &c` work without intermediate bindings.
macro_rules! impl_binop {
    ($trait:ident, $method:ident, $impl_fn:path) => {
        impl $trait for &Mat {
            type Output = Mat;
            fn $method(self, rhs: &Mat) -> Mat {
                $impl_fn(self, rhs)
            }
        }
        impl $trait<&Mat> for Mat {
            type Output = Mat;
            fn $method(self, rhs: &Mat) -> Mat {
                $impl_fn(&self, rhs)
            }
        }
        impl $trait<Mat> for &Mat {
            type Output = Mat;
            fn $method(self, rhs: Mat) -> Mat {
                $impl_fn(self, &rhs)
            }
        }
        impl $trait for Mat {
            type Output = Mat;
            fn $method(self, rhs: Mat) -> Mat {
                $impl_fn(&self, &rhs)
            }
        }
    };
}

impl_binop!(Add, add, Mat::add);
impl_binop!(Sub, sub, Mat::sub);
impl_binop!(Mul, mul, Mat::mul);

impl Mul<f64> for &Mat {
    type Output = Mat;
    fn mul(self, s: f64) -> Mat {
        self.scale(s)
    }
}

impl Mul<f64> for Mat {
    type Output = Mat;
    fn mul(self, s: f64) -> Mat {
        self.scale(s)
    }
}

impl Neg for &Mat {
    type Output = Mat;
    fn neg(self) -> Mat {
        self.scale(-1.0)
    }
}

impl Neg for Mat {
    type Output = Mat;
    fn neg(self) -> Mat {
        self.scale(-1.0)
    }
}
