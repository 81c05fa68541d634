//! Dense complex linear algebra: Hermitian Jacobi eigensolver, general
//! eigenvalues via Hessenberg reduction plus shifted QR, Householder QR,
//! and LU solves. Everything works on [`CMatrix`] and is deterministic.

mod eig;
mod hermitian;
mod lu;
mod qr;

pub use eig::eig_values;
pub use hermitian::{herm_eig, op_norm};
pub use lu::{det, solve};
pub use qr::qr_decompose;

use crate::matrix::CMatrix;

/// Operator-norm of the off-diagonal part, used by joint diagonalization to
/// measure how far a matrix is from diagonal.
pub fn offdiag_norm(m: &CMatrix) -> f64 {
    let mut off = m.clone();
    for i in 0..m.rows().min(m.cols()) {
        off[(i, i)] = num_complex::Complex64::ZERO;
    }
    off.op_norm()
}
