//! General complex eigenvalues: Householder reduction to upper Hessenberg
//! form followed by the explicit single-shift QR iteration with Wilkinson
//! shifts (the classic COMQR scheme). Eigenvalues only, no Schur vectors.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::CMatrix;

/// Iteration budget per deflated eigenvalue.
const MAX_ITS_PER_EIG: usize = 40;

/// All `n` eigenvalues of a square complex matrix, with multiplicity, in
/// deflation order. Backward stable: the result is the exact spectrum of a
/// matrix within a small multiple of unit roundoff times `‖M‖`.
pub fn eig_values(m: &CMatrix) -> Result<Vec<Complex64>> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "eig needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    if !m.is_finite() {
        return Err(Error::Precondition {
            what: "eig: input has non-finite entries".into(),
            residual: f64::INFINITY,
        });
    }
    let n = m.rows();
    match n {
        0 => return Ok(vec![]),
        1 => return Ok(vec![m[(0, 0)]]),
        _ => {}
    }
    let mut h = m.clone();
    hessenberg_in_place(&mut h);
    shifted_qr(&mut h)
}

/// Unitary similarity reduction to upper Hessenberg form, in place.
fn hessenberg_in_place(h: &mut CMatrix) {
    let n = h.rows();
    for k in 0..n.saturating_sub(2) {
        // Householder vector for column k, rows k+1..n.
        let mut x: Vec<Complex64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let sigma = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if sigma == 0.0 {
            continue;
        }
        let alpha = x[0];
        let phase = if alpha.norm() > 0.0 { alpha / alpha.norm() } else { Complex64::ONE };
        x[0] += phase * sigma;
        let beta = 1.0 / (sigma * (sigma + alpha.norm()));

        // Left: rows k+1..n, columns k..n.
        for j in k..n {
            let mut dot = Complex64::ZERO;
            for (t, xi) in x.iter().enumerate() {
                dot += xi.conj() * h[(k + 1 + t, j)];
            }
            dot *= beta;
            for (t, xi) in x.iter().enumerate() {
                let v = *xi * dot;
                h[(k + 1 + t, j)] -= v;
            }
        }
        // Right: all rows, columns k+1..n.
        for i in 0..n {
            let mut dot = Complex64::ZERO;
            for (t, xi) in x.iter().enumerate() {
                dot += h[(i, k + 1 + t)] * xi;
            }
            dot *= beta;
            for (t, xi) in x.iter().enumerate() {
                let v = dot * xi.conj();
                h[(i, k + 1 + t)] -= v;
            }
        }
        // Entries below the subdiagonal are now negligible; zero them.
        h[(k + 1, k)] = -phase * sigma;
        for i in k + 2..n {
            h[(i, k)] = Complex64::ZERO;
        }
    }
}

/// Explicit single-shift QR with deflation on an upper Hessenberg matrix.
fn shifted_qr(h: &mut CMatrix) -> Result<Vec<Complex64>> {
    let n = h.rows();
    let hnorm = h.frobenius_norm();
    let mut eigs = vec![Complex64::ZERO; n];
    let mut en = n - 1;
    let mut its = 0usize;
    let cap = MAX_ITS_PER_EIG;

    loop {
        // Look for a negligible subdiagonal entry; l is the active block start.
        let mut l = en;
        while l > 0 {
            let sub = h[(l, l - 1)].norm();
            let local = h[(l - 1, l - 1)].norm() + h[(l, l)].norm();
            let thresh = f64::EPSILON * if local > 0.0 { local } else { hnorm };
            if sub <= thresh {
                h[(l, l - 1)] = Complex64::ZERO;
                break;
            }
            l -= 1;
        }

        if l == en {
            // 1x1 block deflated.
            eigs[en] = h[(en, en)];
            if en == 0 {
                return Ok(eigs);
            }
            en -= 1;
            its = 0;
            continue;
        }

        if its >= cap {
            return Err(Error::Convergence {
                what: format!(
                    "eig: QR iteration stalled on a {n}x{n} matrix (‖M‖_F = {hnorm:.3e}), cap {cap} per eigenvalue",
                ),
                iterations: cap,
            });
        }
        its += 1;

        // Shift: Wilkinson from the trailing 2x2, with an ad hoc exceptional
        // shift every 10 stalled iterations to break symmetric cycling.
        let shift = if its % 10 == 0 {
            let mut s = h[(en, en - 1)].norm();
            if en >= l + 2 {
                s += h[(en - 1, en - 2)].norm();
            }
            Complex64::new(s, 0.0)
        } else {
            wilkinson_shift(h[(en - 1, en - 1)], h[(en - 1, en)], h[(en, en - 1)], h[(en, en)])
        };

        for i in l..=en {
            h[(i, i)] -= shift;
        }

        // QR sweep via Givens rotations on the subdiagonal of the active block.
        let mut rot = Vec::with_capacity(en - l);
        for i in l..en {
            let (c, s) = givens(h[(i, i)], h[(i + 1, i)]);
            for j in i..=en {
                let t1 = h[(i, j)];
                let t2 = h[(i + 1, j)];
                h[(i, j)] = c * t1 + s * t2;
                h[(i + 1, j)] = -s.conj() * t1 + c * t2;
            }
            rot.push((c, s));
        }
        // Multiply by the adjoint rotations from the right: H <- R Q = G..(H-σ)..G*.
        for (idx, &(c, s)) in rot.iter().enumerate() {
            let i = l + idx;
            for row in l..=en {
                let t1 = h[(row, i)];
                let t2 = h[(row, i + 1)];
                h[(row, i)] = c * t1 + s.conj() * t2;
                h[(row, i + 1)] = -s * t1 + c * t2;
            }
        }

        for i in l..=en {
            h[(i, i)] += shift;
        }
    }
}

/// Eigenvalue of `[[x, y],[z, w]]` nearest to `w`, computed with the stable
/// root formula.
fn wilkinson_shift(x: Complex64, y: Complex64, z: Complex64, w: Complex64) -> Complex64 {
    let t = (x - w) * 0.5;
    let d = (t * t + y * z).sqrt();
    // pick the sign that maximizes |t ± d| for the stable division
    let denom = if (t + d).norm() >= (t - d).norm() { t + d } else { t - d };
    if denom.norm() == 0.0 {
        w
    } else {
        w - y * z / denom
    }
}

/// Complex Givens rotation: returns real `c >= 0` and complex `s` with
/// `[[c, s],[-s̄, c]] · (f, g)^T = (r, 0)^T`.
fn givens(f: Complex64, g: Complex64) -> (Complex64, Complex64) {
    let fn_ = f.norm();
    let gn = g.norm();
    if gn == 0.0 {
        return (Complex64::ONE, Complex64::ZERO);
    }
    if fn_ == 0.0 {
        return (Complex64::ZERO, g.conj() / gn);
    }
    let d = (fn_ * fn_ + gn * gn).sqrt();
    let c = Complex64::new(fn_ / d, 0.0);
    let s = (f / fn_) * g.conj() / d;
    (c, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_matrix, random_unitary, rng_from_seed};
    use crate::spectrum::hausdorff;

    fn r(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    /// Independent determinant sweep: |det(M - λI)| via fresh Gaussian
    /// elimination with partial pivoting, no shared code with the QR path.
    fn det_at(m: &CMatrix, lambda: Complex64) -> f64 {
        let n = m.rows();
        let mut a: Vec<Vec<Complex64>> =
            (0..n).map(|i| (0..n).map(|j| m[(i, j)] - if i == j { lambda } else { Complex64::ZERO }).collect()).collect();
        let mut det = Complex64::ONE;
        for k in 0..n {
            let (piv, _) = (k..n)
                .map(|i| (i, a[i][k].norm()))
                .max_by(|x, y| x.1.total_cmp(&y.1))
                .unwrap();
            if a[piv][k].norm() == 0.0 {
                return 0.0;
            }
            if piv != k {
                a.swap(piv, k);
                det = -det;
            }
            det *= a[k][k];
            for i in k + 1..n {
                let f = a[i][k] / a[k][k];
                for j in k..n {
                    let sub = f * a[k][j];
                    a[i][j] -= sub;
                }
            }
        }
        det.norm()
    }

    #[test]
    fn diagonal_and_nilpotent() {
        let d = CMatrix::diag(&[r(1.0), r(2.0), r(3.0)]);
        let mut evals = eig_values(&d).unwrap();
        evals.sort_by(|a, b| a.re.total_cmp(&b.re));
        for (e, want) in evals.iter().zip([1.0, 2.0, 3.0]) {
            assert!((e - r(want)).norm() < 1e-13);
        }

        let nil = CMatrix::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        for e in eig_values(&nil).unwrap() {
            assert!(e.norm() < 1e-14);
        }
    }

    #[test]
    fn empty_and_scalar() {
        assert!(eig_values(&CMatrix::zeros(0, 0)).unwrap().is_empty());
        let m = CMatrix::new(1, 1, vec![Complex64::new(2.0, -3.0)]).unwrap();
        assert_eq!(eig_values(&m).unwrap(), vec![Complex64::new(2.0, -3.0)]);
        assert!(eig_values(&CMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn shift_matrix_converges() {
        // subdiagonal ones: eigenvalues all zero, a classic QR stress case
        for n in [3usize, 4, 7] {
            let mut s = CMatrix::zeros(n, n);
            for i in 1..n {
                s[(i, i - 1)] = Complex64::ONE;
            }
            for e in eig_values(&s).unwrap() {
                assert!(e.norm() < 1e-8, "n={n}: |λ|={}", e.norm());
            }
        }
    }

    #[test]
    fn circulant_has_roots_of_unity() {
        // full cyclic shift: eigenvalues are the n-th roots of unity
        let n = 6;
        let mut s = CMatrix::zeros(n, n);
        for i in 1..n {
            s[(i, i - 1)] = Complex64::ONE;
        }
        s[(0, n - 1)] = Complex64::ONE;
        let evals = eig_values(&s).unwrap();
        for e in &evals {
            assert!((e.norm() - 1.0).abs() < 1e-10);
        }
        let roots: Vec<Complex64> = (0..n)
            .map(|k| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n as f64))
            .collect();
        assert!(hausdorff(&evals, &roots) < 1e-10);
    }

    #[test]
    fn random_matrices_match_determinant_oracle() {
        let mut rng = rng_from_seed(2024);
        for _ in 0..10 {
            let m = random_matrix(5, 5, &mut rng);
            let evals = eig_values(&m).unwrap();
            assert_eq!(evals.len(), 5);
            for &lam in &evals {
                let d = det_at(&m, lam);
                assert!(d <= 1e-6, "|det(M - λI)| = {d:e} at λ = {lam}");
            }
        }
    }

    #[test]
    fn unitary_similarity_invariance() {
        let mut rng = rng_from_seed(99);
        for n in [3usize, 6, 9] {
            let m = random_matrix(n, n, &mut rng);
            let u = random_unitary(n, &mut rng);
            let conj = &(&u.adjoint() * &m) * &u;
            let e1 = eig_values(&m).unwrap();
            let e2 = eig_values(&conj).unwrap();
            let d = hausdorff(&e1, &e2);
            assert!(d <= 1e-9 * m.op_norm().max(1.0), "n={n}: d_H={d:e}");
        }
    }

    #[test]
    fn repeated_eigenvalues() {
        // Jordan-ish block with repeated eigenvalue 2
        let m = CMatrix::from_real(3, 3, &[2.0, 1.0, 0.0, 0.0, 2.0, 1.0, 0.0, 0.0, 2.0]).unwrap();
        let evals = eig_values(&m).unwrap();
        for e in evals {
            assert!((e - r(2.0)).norm() < 1e-5, "defective eigenvalue drift: {e}");
        }
    }
}
