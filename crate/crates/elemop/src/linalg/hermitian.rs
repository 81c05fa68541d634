//! Cyclic Jacobi eigensolver for Hermitian matrices.
//!
//! Each sweep annihilates every off-diagonal pair with a unitary plane
//! rotation; convergence is quadratic once the off-diagonal mass is small.
//! Accuracy is near machine precision, which is what makes this the
//! backbone of the PSD checks and of `op_norm`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{CMatrix, Tolerance};

const MAX_SWEEPS: usize = 60;

/// Eigenvalues (ascending) and a unitary `U` with `U* M U` diagonal.
///
/// The input must be Hermitian within `Tolerance::default()` at scale `‖M‖`;
/// it is symmetrized before iterating so the rotations see an exactly
/// Hermitian matrix.
pub fn herm_eig(m: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    herm_eig_tol(m, Tolerance::default())
}

/// [`herm_eig`] with an explicit Hermitian-ness tolerance.
pub fn herm_eig_tol(m: &CMatrix, tol: Tolerance) -> Result<(Vec<f64>, CMatrix)> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "herm_eig needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let scale = m.frobenius_norm();
    let defect = (m - &m.adjoint()).frobenius_norm();
    if defect > tol.threshold(scale) {
        return Err(Error::Precondition {
            what: format!("herm_eig: {}x{} input is not Hermitian", m.rows(), m.cols()),
            residual: defect,
        });
    }

    let n = m.rows();
    let mut a = m.hermitian_part();
    let mut u = CMatrix::identity(n);
    if n <= 1 {
        let evals = (0..n).map(|i| a[(i, i)].re).collect();
        return Ok((evals, u));
    }

    let frob = a.frobenius_norm();
    let stop = f64::EPSILON * frob.max(f64::MIN_POSITIVE);

    for _sweep in 0..MAX_SWEEPS {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off += 2.0 * a[(p, q)].norm_sqr();
            }
        }
        if off.sqrt() <= stop {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate_pair(&mut a, &mut u, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let evals: Vec<f64> = order.iter().map(|&i| a[(i, i)].re).collect();
    let u_sorted = CMatrix::from_fn(n, n, |i, j| u[(i, order[j])]);
    Ok((evals, u_sorted))
}

/// One complex Jacobi rotation annihilating `a[(p,q)]`.
///
/// The pivot `[[α, γ],[γ̄, β]]` is reduced to the real symmetric case by
/// factoring out the phase of γ, then rotated with the classic stable
/// tangent formula.
fn rotate_pair(a: &mut CMatrix, u: &mut CMatrix, p: usize, q: usize) {
    let gamma = a[(p, q)];
    let g = gamma.norm();
    if g == 0.0 {
        return;
    }
    let alpha = a[(p, p)].re;
    let beta = a[(q, q)].re;
    let phase = gamma / g;

    let tau = (beta - alpha) / (2.0 * g);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // R = [[c·phase, s·phase], [-s, c]]; update A <- R* A R, U <- U R.
    let rpp = phase * c;
    let rpq = phase * s;
    let rqp = Complex64::new(-s, 0.0);
    let rqq = Complex64::new(c, 0.0);

    let n = a.rows();
    for i in 0..n {
        let aip = a[(i, p)];
        let aiq = a[(i, q)];
        a[(i, p)] = aip * rpp + aiq * rqp;
        a[(i, q)] = aip * rpq + aiq * rqq;
    }
    for j in 0..n {
        let apj = a[(p, j)];
        let aqj = a[(q, j)];
        a[(p, j)] = rpp.conj() * apj + rqp.conj() * aqj;
        a[(q, j)] = rpq.conj() * apj + rqq.conj() * aqj;
    }
    a[(p, q)] = Complex64::ZERO;
    a[(q, p)] = Complex64::ZERO;
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);

    for i in 0..n {
        let uip = u[(i, p)];
        let uiq = u[(i, q)];
        u[(i, p)] = uip * rpp + uiq * rqp;
        u[(i, q)] = uip * rpq + uiq * rqq;
    }
}

/// Largest singular value via the Hermitian embedding `[[0, M],[M*, 0]]`,
/// whose spectrum is `{±σ_i}` padded with zeros.
pub fn op_norm(m: &CMatrix) -> f64 {
    let (rows, cols) = (m.rows(), m.cols());
    if rows == 0 || cols == 0 {
        return 0.0;
    }
    let n = rows + cols;
    let mut emb = CMatrix::zeros(n, n);
    for i in 0..rows {
        for j in 0..cols {
            emb[(i, rows + j)] = m[(i, j)];
            emb[(rows + j, i)] = m[(i, j)].conj();
        }
    }
    let (evals, _) = herm_eig(&emb).expect("embedding is Hermitian by construction");
    evals.last().map(|&x| x.max(0.0)).unwrap_or(0.0)
}
