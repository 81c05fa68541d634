//! Householder QR, used to orthonormalize Gaussian matrices into Haar-like
//! random unitaries and to measure column ranks.

use num_complex::Complex64;

use crate::matrix::CMatrix;

/// Thin QR of an m×n matrix (m >= n): returns `(Q, R)` with `Q` m×n having
/// orthonormal columns and `R` n×n upper triangular.
pub fn qr_decompose(m: &CMatrix) -> (CMatrix, CMatrix) {
    let rows = m.rows();
    let cols = m.cols();
    debug_assert!(rows >= cols);
    let mut r = m.clone();
    // Accumulate Q by applying the Householder reflectors to the identity.
    let mut q = CMatrix::identity(rows);

    for k in 0..cols.min(rows.saturating_sub(1)) {
        let mut x: Vec<Complex64> = (k..rows).map(|i| r[(i, k)]).collect();
        let sigma = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if sigma == 0.0 {
            continue;
        }
        let alpha = x[0];
        let phase = if alpha.norm() > 0.0 { alpha / alpha.norm() } else { Complex64::ONE };
        x[0] += phase * sigma;
        let beta = 1.0 / (sigma * (sigma + alpha.norm()));

        for j in k..cols {
            let mut dot = Complex64::ZERO;
            for (t, xi) in x.iter().enumerate() {
                dot += xi.conj() * r[(k + t, j)];
            }
            dot *= beta;
            for (t, xi) in x.iter().enumerate() {
                let v = *xi * dot;
                r[(k + t, j)] -= v;
            }
        }
        for j in 0..rows {
            let mut dot = Complex64::ZERO;
            for (t, xi) in x.iter().enumerate() {
                dot += xi.conj() * q[(k + t, j)];
            }
            dot *= beta;
            for (t, xi) in x.iter().enumerate() {
                let v = *xi * dot;
                q[(k + t, j)] -= v;
            }
        }
    }

    // q currently holds the product of reflectors applied to I, i.e. Q*.
    let q_full = q.adjoint();
    let q_thin = CMatrix::from_fn(rows, cols, |i, j| q_full[(i, j)]);
    let r_thin = CMatrix::from_fn(cols, cols, |i, j| if i <= j { r[(i, j)] } else { Complex64::ZERO });
    (q_thin, r_thin)
}
