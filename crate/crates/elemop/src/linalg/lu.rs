//! LU with partial pivoting: linear solves (multiple right-hand sides) and
//! determinants for small complex systems.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::CMatrix;

/// Solve `A X = B` for square `A`. Fails on dimension mismatch or a
/// numerically singular pivot.
pub fn solve(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    if !a.is_square() {
        return Err(Error::Dimension(format!("solve needs a square matrix, got {}x{}", a.rows(), a.cols())));
    }
    if a.rows() != b.rows() {
        return Err(Error::Dimension(format!(
            "solve: {}x{} system against {}x{} right-hand side",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let n = a.rows();
    let mut lu = a.clone();
    let mut x = b.clone();
    let tiny = f64::EPSILON * a.frobenius_norm().max(f64::MIN_POSITIVE);

    for k in 0..n {
        let (piv, mag) = (k..n)
            .map(|i| (i, lu[(i, k)].norm()))
            .max_by(|p, q| p.1.total_cmp(&q.1))
            .unwrap();
        if mag <= tiny {
            return Err(Error::Precondition {
                what: format!("solve: singular {n}x{n} system at pivot {k}"),
                residual: mag,
            });
        }
        if piv != k {
            for j in 0..n {
                let t = lu[(k, j)];
                lu[(k, j)] = lu[(piv, j)];
                lu[(piv, j)] = t;
            }
            for j in 0..x.cols() {
                let t = x[(k, j)];
                x[(k, j)] = x[(piv, j)];
                x[(piv, j)] = t;
            }
        }
        for i in k + 1..n {
            let f = lu[(i, k)] / lu[(k, k)];
            lu[(i, k)] = f;
            for j in k + 1..n {
                let s = f * lu[(k, j)];
                lu[(i, j)] -= s;
            }
            for j in 0..x.cols() {
                let s = f * x[(k, j)];
                x[(i, j)] -= s;
            }
        }
    }
    for j in 0..x.cols() {
        for i in (0..n).rev() {
            let mut acc = x[(i, j)];
            for t in i + 1..n {
                acc -= lu[(i, t)] * x[(t, j)];
            }
            x[(i, j)] = acc / lu[(i, i)];
        }
    }
    Ok(x)
}

/// Determinant via LU with partial pivoting.
pub fn det(a: &CMatrix) -> Result<Complex64> {
    if !a.is_square() {
        return Err(Error::Dimension(format!("det needs a square matrix, got {}x{}", a.rows(), a.cols())));
    }
    let n = a.rows();
    let mut lu = a.clone();
    let mut d = Complex64::ONE;
    for k in 0..n {
        let (piv, mag) = (k..n)
            .map(|i| (i, lu[(i, k)].norm()))
            .max_by(|p, q| p.1.total_cmp(&q.1))
            .unwrap();
        if mag == 0.0 {
            return Ok(Complex64::ZERO);
        }
        if piv != k {
            for j in 0..n {
                let t = lu[(k, j)];
                lu[(k, j)] = lu[(piv, j)];
                lu[(piv, j)] = t;
            }
            d = -d;
        }
        d *= lu[(k, k)];
        for i in k + 1..n {
            let f = lu[(i, k)] / lu[(k, k)];
            for j in k + 1..n {
                let s = f * lu[(k, j)];
                lu[(i, j)] -= s;
            }
        }
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_matrix, rng_from_seed};

    #[test]
    fn solve_recovers_planted_solution() {
        let mut rng = rng_from_seed(11);
        let a = random_matrix(5, 5, &mut rng);
        let planted = random_matrix(5, 2, &mut rng);
        let b = a.matmul(&planted).unwrap();
        let x = solve(&a, &b).unwrap();
        assert!((&x - &planted).frobenius_norm() < 1e-10);
    }

    #[test]
    fn det_of_diagonal() {
        let d = CMatrix::diag(&[Complex64::new(2.0, 0.0), Complex64::new(0.0, 3.0)]);
        let v = det(&d).unwrap();
        assert!((v - Complex64::new(0.0, 6.0)).norm() < 1e-14);
    }

    #[test]
    fn singular_system_errors() {
        let a = CMatrix::zeros(3, 3);
        assert!(solve(&a, &CMatrix::identity(3)).is_err());
    }
}
