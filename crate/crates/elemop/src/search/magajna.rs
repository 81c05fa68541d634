//! Factorization search: positive operators `A_j = C_j C_j*`,
//! `B_j = D_j D_j*` with `Σ_j A_j B_j` close to `λI`, found by multi-start
//! gradient descent with Armijo backtracking on the squared Frobenius
//! residual. Includes the witness check that turns a successful
//! factorization into a formally positive operator with `Δ(I) = λ²I`.

use num_complex::Complex64;


use crate::error::{Error, Result};
use crate::matrix::{is_psd, CMatrix, Tolerance};
use crate::op::ElementaryOperator;
use crate::random::{derive_seed, gaussian_c64, rng_from_seed};
use crate::spectrum::SpectrumSet;

use super::{Certificate, SearchConfig, SearchKind, SearchResult};

const ARMIJO: f64 = 1e-4;
const BACKTRACK: f64 = 0.5;
const MAX_HALVINGS: usize = 48;
const STEP_GROWTH: f64 = 1.5;

/// Factor matrices parametrizing PSD coefficients: `A_j = C_j C_j*`,
/// `B_j = D_j D_j*`, all d×d.
#[derive(Debug, Clone)]
pub struct FactorParams {
    pub c: Vec<CMatrix>,
    pub d: Vec<CMatrix>,
}

impl FactorParams {
    pub fn dim(&self) -> usize {
        self.c.first().map(|m| m.rows()).unwrap_or(0)
    }

    pub fn terms(&self) -> usize {
        self.c.len()
    }

    /// Real coordinates: every factor entry contributes (re, im) in row-major
    /// order, C factors first.
    pub fn flatten(&self) -> Vec<f64> {
        let mut out = Vec::new();
        for m in self.c.iter().chain(self.d.iter()) {
            for z in m.entries() {
                out.push(z.re);
                out.push(z.im);
            }
        }
        out
    }

    pub fn unflatten(x: &[f64], dim: usize, terms: usize) -> FactorParams {
        let per = dim * dim * 2;
        let mat = |offset: usize| {
            CMatrix::from_fn(dim, dim, |i, j| {
                let base = offset + (i * dim + j) * 2;
                Complex64::new(x[base], x[base + 1])
            })
        };
        let c = (0..terms).map(|t| mat(t * per)).collect();
        let d = (0..terms).map(|t| mat((terms + t) * per)).collect();
        FactorParams { c, d }
    }

    fn axpy(&self, t: f64, dir: &FactorParams) -> FactorParams {
        let upd = |m: &CMatrix, g: &CMatrix| {
            CMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)] + g[(i, j)] * t)
        };
        FactorParams {
            c: self.c.iter().zip(&dir.c).map(|(m, g)| upd(m, g)).collect(),
            d: self.d.iter().zip(&dir.d).map(|(m, g)| upd(m, g)).collect(),
        }
    }

    fn norm_sqr(&self) -> f64 {
        self.c
            .iter()
            .chain(self.d.iter())
            .flat_map(|m| m.entries())
            .map(|z| z.norm_sqr())
            .sum()
    }
}

/// Objective value `f = ‖Σ_j C_j C_j* D_j D_j* - λI‖²_F` and its gradient
/// with respect to the real and imaginary parts of every factor entry,
/// packed as complex matrices (`re` holds `∂f/∂Re`, `im` holds `∂f/∂Im`).
pub fn magajna_objective(params: &FactorParams, lambda: Complex64) -> (f64, FactorParams) {
    let d = params.dim();
    let terms = params.terms();
    let lefts: Vec<CMatrix> =
        params.c.iter().map(|c| c.matmul(&c.adjoint()).expect("square")).collect();
    let rights: Vec<CMatrix> =
        params.d.iter().map(|m| m.matmul(&m.adjoint()).expect("square")).collect();

    let mut residual = CMatrix::zeros(d, d);
    for j in 0..terms {
        residual = &residual + &lefts[j].matmul(&rights[j]).expect("square");
    }
    for i in 0..d {
        residual[(i, i)] -= lambda;
    }
    let f = residual.frobenius_norm().powi(2);

    let r_adj = residual.adjoint();
    let mut grad_c = Vec::with_capacity(terms);
    let mut grad_d = Vec::with_capacity(terms);
    for j in 0..terms {
        // d/dC of <R,R> with R = Σ V_j W_j - λI, V = CC*, W = DD*:
        //   G_C = (R W + W R*) C, G_D = (V R + R* V) D, gradient 2G.
        let w = &rights[j];
        let v = &lefts[j];
        let rw = residual.matmul(w).expect("square");
        let wr = w.matmul(&r_adj).expect("square");
        let gc = (&rw + &wr).matmul(&params.c[j]).expect("square");
        let vr = v.matmul(&residual).expect("square");
        let rv = r_adj.matmul(v).expect("square");
        let gd = (&vr + &rv).matmul(&params.d[j]).expect("square");
        grad_c.push(gc.scale(Complex64::new(2.0, 0.0)));
        grad_d.push(gd.scale(Complex64::new(2.0, 0.0)));
    }
    (f, FactorParams { c: grad_c, d: grad_d })
}

/// Frobenius residual `‖Σ_j A_j B_j - λI‖_F` at the given factors.
pub fn factorization_residual(params: &FactorParams, lambda: Complex64) -> f64 {
    let (f, _) = magajna_objective(params, lambda);
    f.sqrt()
}

/// Multi-start gradient descent for `λI = Σ_j A_j B_j` over PSD
/// coefficients. Returns the best run; success is nothing more than
/// `residual <= config.success_tol`.
pub fn search_factorization(
    lambda: Complex64,
    dim: usize,
    terms: usize,
    config: &SearchConfig,
) -> Result<SearchResult> {
    config.validate()?;
    if dim == 0 || terms == 0 {
        return Err(Error::Config(format!(
            "search_factorization needs dim >= 1 and terms >= 1, got dim={dim}, terms={terms}"
        )));
    }

    let mut best: Option<(f64, usize, usize, Vec<f64>, FactorParams)> = None;
    let mut restarts_used = 0usize;

    for restart in 0..config.restarts {
        restarts_used += 1;
        let mut rng = rng_from_seed(derive_seed(config.seed, restart as u64));
        let scale = (lambda.norm().max(0.5) / (terms as f64 * (dim as f64).powi(2))).powf(0.25);
        let init = FactorParams {
            c: (0..terms)
                .map(|_| CMatrix::from_fn(dim, dim, |_, _| gaussian_c64(&mut rng) * scale))
                .collect(),
            d: (0..terms)
                .map(|_| CMatrix::from_fn(dim, dim, |_, _| gaussian_c64(&mut rng) * scale))
                .collect(),
        };
        let (params, trace, iters) = descend(init, lambda, config);
        let residual = trace.last().copied().unwrap_or(f64::INFINITY);
        if best.as_ref().map_or(true, |(r, ..)| residual < *r) {
            best = Some((residual, restart, iters, trace, params));
        }
        if best.as_ref().unwrap().0 <= config.success_tol {
            break;
        }
    }

    let (residual, best_restart, iterations, trace, params) = best.expect("at least one restart");
    let certificate = certify_factorization(&params, lambda);
    Ok(SearchResult {
        kind: SearchKind::Magajna { lambda },
        dim,
        terms,
        seed: config.seed,
        restarts_used,
        best_restart,
        iterations,
        residual,
        residual_trace: trace,
        left_factors: params.c,
        right_factors: params.d,
        certificate,
        succeeded: Some(residual <= config.success_tol),
    })
}

/// Armijo-backtracked gradient descent; the returned trace of Frobenius
/// residuals is non-increasing by construction.
fn descend(
    mut params: FactorParams,
    lambda: Complex64,
    config: &SearchConfig,
) -> (FactorParams, Vec<f64>, usize) {
    let mut step = 1e-2 / (1.0 + lambda.norm());
    let (mut f, mut grad) = magajna_objective(&params, lambda);
    let mut trace = vec![f.sqrt()];
    let mut iters = 0usize;

    for _ in 0..config.iters {
        if f.sqrt() <= config.success_tol {
            break;
        }
        let gnorm2 = grad.norm_sqr();
        if gnorm2 <= 1e-300 {
            break;
        }
        let mut t = step;
        let mut accepted = false;
        for _ in 0..MAX_HALVINGS {
            let trial = params.axpy(-t, &grad);
            let (f_trial, grad_trial) = magajna_objective(&trial, lambda);
            if f_trial <= f - ARMIJO * t * gnorm2 {
                params = trial;
                f = f_trial;
                grad = grad_trial;
                step = (t * STEP_GROWTH).min(1.0);
                accepted = true;
                break;
            }
            t *= BACKTRACK;
        }
        if !accepted {
            break;
        }
        iters += 1;
        trace.push(f.sqrt());
    }
    (params, trace, iters)
}

/// Independent certificate: PSD margins of every assembled coefficient plus
/// the residual recomputed through the operator `apply` path rather than the
/// direct matrix-product assembly.
fn certify_factorization(params: &FactorParams, lambda: Complex64) -> Certificate {
    let dim = params.dim();
    let lefts: Vec<CMatrix> =
        params.c.iter().map(|c| c.matmul(&c.adjoint()).expect("square")).collect();
    let rights: Vec<CMatrix> =
        params.d.iter().map(|m| m.matmul(&m.adjoint()).expect("square")).collect();
    let mut psd_mins = Vec::with_capacity(lefts.len() + rights.len());
    for m in lefts.iter().chain(rights.iter()) {
        let (evals, _) = crate::linalg::herm_eig(&m.hermitian_part()).expect("hermitian");
        psd_mins.push(evals.first().copied().unwrap_or(0.0));
    }
    let terms: Vec<(CMatrix, CMatrix)> = lefts.into_iter().zip(rights).collect();
    let op = ElementaryOperator::from_terms(terms).expect("valid family");
    let image = op.apply(&CMatrix::identity(dim)).expect("identity conforms");
    let mut diff = image;
    for i in 0..dim {
        diff[(i, i)] -= lambda;
    }
    Certificate { psd_mins, residual_recheck: diff.frobenius_norm() }
}

/// Report of the formal-positivity construction `Δ = Λ̃ Λ` for a `Λ` with
/// PSD coefficients and `Λ(I) ≈ λI`.
#[derive(Debug, Clone)]
pub struct WitnessReport {
    pub lambda: Complex64,
    pub lambda_sq: Complex64,
    /// `‖Λ(I) - λI‖_F` of the input.
    pub input_residual: f64,
    /// `‖Δ(I) - λ²I‖_F` of the composed operator.
    pub delta_identity_residual: f64,
    /// Distance from λ² to the nearest eigenvalue of `K(Δ)`.
    pub eigenvalue_distance: f64,
    pub lambda_sq_in_spectrum: bool,
    /// `Δ` must be C₂-positive: it is `Λ̃Λ` by construction.
    pub c2_positive: bool,
    pub spectrum: SpectrumSet,
}

/// Form `Δ = Λ̃ Λ`, verify `Δ(I) = λ²I` within `10·tol`, and report whether
/// `λ²` sits in the spectrum of `K(Δ)` and whether `Δ` is C₂-positive.
pub fn formally_positive_witness(
    op: &ElementaryOperator,
    lambda: Complex64,
    tol: Tolerance,
) -> Result<WitnessReport> {
    if op.left_dim() != op.right_dim() {
        return Err(Error::Dimension(format!(
            "formally_positive_witness needs a square-acting operator, got {}x{}",
            op.left_dim(),
            op.right_dim()
        )));
    }
    let dim = op.left_dim();
    for (j, (a, b)) in op.family().terms().iter().enumerate() {
        for (side, m) in [("left", a), ("right", b)] {
            let chk = is_psd(m, tol)?;
            if !chk.ok {
                return Err(Error::Precondition {
                    what: format!("formally_positive_witness: {side} coefficient {j} is not PSD"),
                    residual: chk.residual,
                });
            }
        }
    }
    let mut image = op.apply(&CMatrix::identity(dim))?;
    for i in 0..dim {
        image[(i, i)] -= lambda;
    }
    let input_residual = image.frobenius_norm();
    let scale = lambda.norm().max(1.0) * (dim as f64).sqrt();
    if input_residual > tol.threshold(scale) {
        return Err(Error::Precondition {
            what: format!("formally_positive_witness: Λ(I) is not within tolerance of λI (λ = {lambda})"),
            residual: input_residual,
        });
    }

    let delta = op.formal_adjoint().compose(op)?;
    let lambda_sq = lambda * lambda;
    let mut delta_image = delta.apply(&CMatrix::identity(dim))?;
    for i in 0..dim {
        delta_image[(i, i)] -= lambda_sq;
    }
    let delta_identity_residual = delta_image.frobenius_norm();
    let sq_scale = lambda_sq.norm().max(1.0) * (dim as f64).sqrt();
    if delta_identity_residual > 10.0 * tol.threshold(sq_scale) {
        return Err(Error::Precondition {
            what: "formally_positive_witness: Δ(I) strayed from λ²I beyond 10·tol".into(),
            residual: delta_identity_residual,
        });
    }

    let spectrum = delta.spectrum_tol(tol)?;
    let eigenvalue_distance = spectrum
        .values
        .iter()
        .map(|z| (z - lambda_sq).norm())
        .fold(f64::INFINITY, f64::min);
    let c2_positive = delta.classify(tol)?.c2_positive;
    Ok(WitnessReport {
        lambda,
        lambda_sq,
        input_residual,
        delta_identity_residual,
        eigenvalue_distance,
        lambda_sq_in_spectrum: eigenvalue_distance <= tol.threshold(lambda_sq.norm().max(1.0)),
        c2_positive,
        spectrum,
    })
}
