//! Derivative-free hunt for Lüders operators with non-real spectrum:
//! families `A_j = C_j C_j*` (and `B_j = A_j`) scored by the largest
//! `|Im λ|` over the eigenvalues of the Kronecker realization. Eigenvalues
//! of the nonnormal realization are nonsmooth where they coalesce, hence
//! Nelder-Mead rather than a gradient method.

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::op::ElementaryOperator;
use crate::random::{derive_seed, gaussian_c64, rng_from_seed};

use super::nelder_mead::{nelder_mead, NmOptions};
use super::{Certificate, SearchConfig, SearchKind, SearchResult};

const COLLAPSE_RESTARTS: usize = 3;

/// Score of a factor vector: `max_i |Im λ_i(K)]` of the Lüders family it
/// parametrizes, or `None` when the eigensolve fails.
fn score(x: &[f64], dim: usize, terms: usize) -> Option<f64> {
    let family = factors_from_flat(x, dim, terms);
    let op = luders_operator(&family).ok()?;
    let k = op.kron_matrix().ok()?;
    let evals = crate::linalg::eig_values(k).ok()?;
    Some(evals.iter().map(|z| z.im.abs()).fold(0.0, f64::max))
}

fn factors_from_flat(x: &[f64], dim: usize, terms: usize) -> Vec<CMatrix> {
    let per = dim * dim * 2;
    (0..terms)
        .map(|t| {
            CMatrix::from_fn(dim, dim, |i, j| {
                let base = t * per + (i * dim + j) * 2;
                Complex64::new(x[base], x[base + 1])
            })
        })
        .collect()
}

fn luders_operator(factors: &[CMatrix]) -> Result<ElementaryOperator> {
    let lefts: Vec<CMatrix> = factors.iter().map(|c| c.matmul(&c.adjoint()).expect("square")).collect();
    Ok(ElementaryOperator::new(crate::op::CoefficientFamily::luders(lefts)?))
}

/// Multi-start Nelder-Mead maximization of the spectral imaginary part over
/// Lüders families. Restarts rebuild the simplex when it collapses; the
/// certificate re-verifies the best candidate from scratch.
pub fn luders_nonreal_search(dim: usize, terms: usize, config: &SearchConfig) -> Result<SearchResult> {
    config.validate()?;
    if dim == 0 || terms == 0 {
        return Err(Error::Config(format!(
            "luders_nonreal_search needs dim >= 1 and terms >= 1, got dim={dim}, terms={terms}"
        )));
    }
    let nvars = terms * dim * dim * 2;

    let mut best_g = -1.0f64;
    let mut best_x: Vec<f64> = vec![0.0; nvars];
    let mut best_restart = 0usize;
    let mut best_iters = 0usize;
    let mut best_trace: Vec<f64> = vec![0.0];
    let mut restarts_used = 0usize;

    for restart in 0..config.restarts {
        restarts_used += 1;
        let mut rng = rng_from_seed(derive_seed(config.seed ^ 0x10DE_25, restart as u64));
        let mut x0: Vec<f64> = (0..nvars).map(|_| gaussian_c64(&mut rng).re * 0.7).collect();
        let mut iters_left = config.iters;
        let mut run_best_g = -1.0f64;
        let mut run_best_x = x0.clone();
        let mut run_iters = 0usize;
        let mut run_trace: Vec<f64> = Vec::new();
        let mut step = 0.4f64;

        for _ in 0..=COLLAPSE_RESTARTS {
            if iters_left == 0 {
                break;
            }
            let objective = |x: &[f64]| -> f64 {
                match score(x, dim, terms) {
                    Some(g) => -g,
                    None => f64::INFINITY,
                }
            };
            let opts = NmOptions { max_iters: iters_left, init_step: step, ..Default::default() };
            let out = nelder_mead(objective, &x0, &opts);
            iters_left = iters_left.saturating_sub(out.iterations);
            run_iters += out.iterations;
            run_trace.extend(out.trace.iter().map(|f| {
                let g = -f;
                run_best_g = run_best_g.max(g);
                run_best_g
            }));
            if -out.f > run_best_g {
                run_best_g = -out.f;
            }
            if -out.f >= run_best_g {
                run_best_x = out.x.clone();
            }
            if !out.collapsed {
                break;
            }
            // collapsed early: rebuild simplex around the best point with a
            // jittered, smaller step
            x0 = out.x.iter().map(|v| v + (rng.random::<f64>() - 0.5) * 0.05).collect();
            step *= 0.5;
        }

        if run_best_g > best_g {
            best_g = run_best_g;
            best_x = run_best_x;
            best_restart = restart;
            best_iters = run_iters;
            best_trace = run_trace;
        }
    }

    let factors = factors_from_flat(&best_x, dim, terms);
    let certificate = certify(&factors, dim, terms)?;
    Ok(SearchResult {
        kind: SearchKind::LudersNonreal,
        dim,
        terms,
        seed: config.seed,
        restarts_used,
        best_restart,
        iterations: best_iters,
        residual: best_g.max(0.0),
        residual_trace: best_trace,
        left_factors: factors,
        right_factors: Vec::new(),
        certificate,
        succeeded: None,
    })
}

/// Fresh re-verification of a candidate: PSD margins of the coefficients,
/// the Lüders symmetry by construction, and the score from a brand new
/// assembly and eigensolve.
fn certify(factors: &[CMatrix], dim: usize, terms: usize) -> Result<Certificate> {
    let _ = (dim, terms);
    let lefts: Vec<CMatrix> =
        factors.iter().map(|c| c.matmul(&c.adjoint()).expect("square")).collect();
    let mut psd_mins = Vec::with_capacity(lefts.len());
    for a in &lefts {
        let (evals, _) = crate::linalg::herm_eig(&a.hermitian_part())?;
        psd_mins.push(evals.first().copied().unwrap_or(0.0));
    }
    let op = ElementaryOperator::new(crate::op::CoefficientFamily::luders(lefts)?);
    let evals = crate::linalg::eig_values(op.kron_matrix()?)?;
    let g = evals.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    Ok(Certificate { psd_mins, residual_recheck: g })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{commuting_psd_family, rng_from_seed};

    #[test]
    fn single_term_families_are_real() {
        // J=1: K = A₁^T ⊗ A₁ is PSD, so the score must come back ~0
        let config = SearchConfig { restarts: 2, iters: 60, seed: 3, success_tol: 1e-8 };
        let res = luders_nonreal_search(2, 1, &config).unwrap();
        assert!(res.residual <= 1e-10, "g = {}", res.residual);
        assert!((res.certificate.residual_recheck - res.residual).abs() <= 1e-10);
        for &m in &res.certificate.psd_mins {
            assert!(m >= -1e-12);
        }
    }

    #[test]
    fn commuting_planted_family_scores_zero() {
        // positivity theorem forces a real non-negative spectrum
        let mut rng = rng_from_seed(19);
        let lefts = commuting_psd_family(3, 3, 1.0, &mut rng);
        let op = ElementaryOperator::new(crate::op::CoefficientFamily::luders(lefts).unwrap());
        let evals = crate::linalg::eig_values(op.kron_matrix().unwrap()).unwrap();
        let g = evals.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
        assert!(g <= 1e-8, "g = {g}");
    }

    #[test]
    fn search_is_reproducible() {
        let config = SearchConfig { restarts: 2, iters: 40, seed: 77, success_tol: 1e-8 };
        let a = luders_nonreal_search(2, 2, &config).unwrap();
        let b = luders_nonreal_search(2, 2, &config).unwrap();
        assert_eq!(a.residual.to_bits(), b.residual.to_bits());
        assert_eq!(a.best_restart, b.best_restart);
        for (x, y) in a.left_factors.iter().zip(&b.left_factors) {
            assert_eq!(x, y);
        }
    }
}
