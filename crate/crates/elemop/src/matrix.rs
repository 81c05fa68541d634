//! Dense complex matrices with the column-stacking vectorization and the
//! structural predicates used throughout the crate.
//!
//! Entries are `Complex64` in row-major order. The vec convention is
//! column-stacking, so `vec(A X B) = (B^T ⊗ A) vec(X)` holds exactly.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg;

/// Default size cap for Kronecker-product results (rows and columns).
pub const DEFAULT_KRON_CAP: usize = 4096;

/// Absolute/relative tolerance pair. A quantity `q` passes a check against
/// scale `s` iff `|q| <= abs + rel * s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { abs: 1e-10, rel: 1e-10 }
    }
}

impl Tolerance {
    pub fn new(abs: f64, rel: f64) -> Result<Self> {
        if !(abs >= 0.0) || !(rel >= 0.0) {
            return Err(Error::Config(format!(
                "tolerances must be non-negative, got abs={abs}, rel={rel}"
            )));
        }
        Ok(Tolerance { abs, rel })
    }

    /// Acceptance threshold at the given scale.
    pub fn threshold(&self, scale: f64) -> f64 {
        self.abs + self.rel * scale
    }

    /// Does `q` pass at scale `s`?
    pub fn passes(&self, q: f64, scale: f64) -> bool {
        q.abs() <= self.threshold(scale)
    }
}

/// Outcome of a structural predicate: the verdict together with the residual
/// it was judged on and the threshold it was judged against.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Check {
    pub ok: bool,
    pub residual: f64,
    pub threshold: f64,
}

/// Dense complex matrix, row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    /// Build a matrix from row-major entries. Rejects length mismatches and
    /// non-finite entries. Degenerate 0x0 and 1x1 shapes are legal.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        let m = CMatrix { rows, cols, data };
        if !m.is_finite() {
            return Err(Error::Parse("matrix entries must be finite (no NaN/Inf)".into()));
        }
        Ok(m)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix { rows, cols, data: vec![Complex64::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::ONE;
        }
        m
    }

    pub fn diag(entries: &[Complex64]) -> Self {
        let n = entries.len();
        let mut m = CMatrix::zeros(n, n);
        for (i, &v) in entries.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        CMatrix { rows, cols, data }
    }

    /// Row-major real entries, zero imaginary parts.
    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Result<Self> {
        Self::new(rows, cols, entries.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn transpose(&self) -> CMatrix {
        CMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CMatrix {
        CMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    /// Entrywise conjugate (no transpose).
    pub fn conj(&self) -> CMatrix {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn scale(&self, factor: Complex64) -> CMatrix {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        debug_assert!(self.is_square());
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest singular value, computed from the Hermitian embedding
    /// `[[0, M], [M*, 0]]` whose extreme eigenvalues are `±σ_max`.
    pub fn op_norm(&self) -> f64 {
        linalg::op_norm(self)
    }

    /// Hermitian part `(M + M*)/2`.
    pub fn hermitian_part(&self) -> CMatrix {
        debug_assert!(self.is_square());
        CMatrix::from_fn(self.rows, self.cols, |i, j| (self[(i, j)] + self[(j, i)].conj()) * 0.5)
    }

    /// Skew part mapped to a Hermitian matrix: `(M - M*)/(2i)`.
    pub fn skew_part(&self) -> CMatrix {
        debug_assert!(self.is_square());
        let half_over_i = Complex64::new(0.0, -0.5);
        CMatrix::from_fn(self.rows, self.cols, |i, j| {
            (self[(i, j)] - self[(j, i)].conj()) * half_over_i
        })
    }

    pub fn matmul(&self, other: &CMatrix) -> Result<CMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = CMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Complex64::ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn matvec(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "matvec: {}x{} matrix against vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let mut out = vec![Complex64::ZERO; self.rows];
        for i in 0..self.rows {
            let mut acc = Complex64::ZERO;
            for j in 0..self.cols {
                acc += self[(i, j)] * v[j];
            }
            out[i] = acc;
        }
        Ok(out)
    }

    /// Kronecker product with the default size cap.
    pub fn kron(&self, other: &CMatrix) -> Result<CMatrix> {
        self.kron_capped(other, DEFAULT_KRON_CAP)
    }

    /// Kronecker product `(A ⊗ B)[(i·rB + k), (j·cB + l)] = A[i,j]·B[k,l]`.
    pub fn kron_capped(&self, other: &CMatrix, cap: usize) -> Result<CMatrix> {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        if rows > cap || cols > cap {
            return Err(Error::Capacity { rows, cols, cap });
        }
        let mut out = CMatrix::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out[(i * other.rows + k, j * other.cols + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        Ok(out)
    }

    /// Column-stacking vectorization: column 1, then column 2, ...
    pub fn vec_cols(&self) -> Vec<Complex64> {
        let mut v = Vec::with_capacity(self.rows * self.cols);
        for j in 0..self.cols {
            for i in 0..self.rows {
                v.push(self[(i, j)]);
            }
        }
        v
    }

    /// Inverse of [`CMatrix::vec_cols`].
    pub fn unvec(v: &[Complex64], rows: usize, cols: usize) -> Result<CMatrix> {
        if v.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "unvec: vector of length {} cannot fill a {rows}x{cols} matrix",
                v.len()
            )));
        }
        Ok(CMatrix::from_fn(rows, cols, |i, j| v[j * rows + i]))
    }

    /// Hilbert-Schmidt inner product `<X, Y> = Tr(Y* X)`.
    pub fn hs_inner(&self, other: &CMatrix) -> Result<Complex64> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension(format!(
                "hs_inner: {}x{} against {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut acc = Complex64::ZERO;
        for (x, y) in self.data.iter().zip(other.data.iter()) {
            acc += y.conj() * x;
        }
        Ok(acc)
    }

    fn require_square(&self, what: &str) -> Result<()> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "{what} needs a square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;

    fn add(self, other: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix addition shape");
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;

    fn sub(self, other: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix subtraction shape");
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;

    fn mul(self, other: &CMatrix) -> CMatrix {
        self.matmul(other).expect("matrix product shape")
    }
}

/// `M = M*` within `tol` at scale `‖M‖`. Residual is `‖M - M*‖` (operator norm).
pub fn is_hermitian(m: &CMatrix, tol: Tolerance) -> Result<Check> {
    m.require_square("is_hermitian")?;
    let residual = (m - &m.adjoint()).op_norm();
    let threshold = tol.threshold(m.op_norm());
    Ok(Check { ok: residual <= threshold, residual, threshold })
}

/// `M M* = M* M` within `tol` at scale `‖M‖²`.
pub fn is_normal(m: &CMatrix, tol: Tolerance) -> Result<Check> {
    m.require_square("is_normal")?;
    let ma = m.adjoint();
    let residual = (&m.matmul(&ma)? - &ma.matmul(m)?).op_norm();
    let norm = m.op_norm();
    let threshold = tol.threshold(norm * norm);
    Ok(Check { ok: residual <= threshold, residual, threshold })
}

/// Hermitian with smallest eigenvalue `>= -(abs + rel·‖M‖)`. The residual is
/// the worse of the Hermitian defect and the negative eigenvalue excess.
pub fn is_psd(m: &CMatrix, tol: Tolerance) -> Result<Check> {
    m.require_square("is_psd")?;
    let herm = is_hermitian(m, tol)?;
    if !herm.ok {
        return Ok(herm);
    }
    let (evals, _) = linalg::herm_eig(&m.hermitian_part())?;
    let min_eig = evals.first().copied().unwrap_or(0.0);
    let residual = herm.residual.max((-min_eig).max(0.0));
    let threshold = tol.threshold(m.op_norm());
    Ok(Check { ok: residual <= threshold, residual, threshold })
}

/// `‖AB - BA‖ <= tol` at scale `‖A‖·‖B‖`.
pub fn commute(a: &CMatrix, b: &CMatrix, tol: Tolerance) -> Result<Check> {
    a.require_square("commute")?;
    b.require_square("commute")?;
    if a.rows() != b.rows() {
        return Err(Error::Dimension(format!(
            "commute: {}x{} against {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let residual = (&a.matmul(b)? - &b.matmul(a)?).op_norm();
    let threshold = tol.threshold(a.op_norm() * b.op_norm());
    Ok(Check { ok: residual <= threshold, residual, threshold })
}
