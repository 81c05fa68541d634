//! Seeded optimization searches over the PSD cone: factorizations
//! `λI = Σ_j A_j B_j` with PSD coefficients, and Lüders families hunting
//! for non-real spectrum.
//!
//! Positivity is enforced by parametrizing every coefficient as `C C*`, so
//! the searches are unconstrained in the factor entries. Every run is
//! seeded and every result carries an independently recomputed certificate;
//! nothing here claims success beyond the recorded residual.

mod luders;
mod magajna;
mod nelder_mead;

pub use luders::luders_nonreal_search;
pub use magajna::{
    factorization_residual, formally_positive_witness, magajna_objective, search_factorization,
    FactorParams, WitnessReport,
};
pub use nelder_mead::{nelder_mead, NmOptions, NmOutcome};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::CMatrix;

/// Shared knobs for the multi-start searches.
#[derive(Debug, Clone, Copy)]
pub struct SearchConfig {
    pub restarts: usize,
    pub iters: usize,
    pub seed: u64,
    /// A factorization search counts as successful when the residual drops
    /// below this.
    pub success_tol: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { restarts: 10, iters: 500, seed: crate::random::DEFAULT_SEED, success_tol: 1e-8 }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 || self.iters == 0 {
            return Err(Error::Config(format!(
                "restarts and iters must be positive, got restarts={}, iters={}",
                self.restarts, self.iters
            )));
        }
        if !(self.success_tol > 0.0) {
            return Err(Error::Config(format!("success_tol must be positive, got {}", self.success_tol)));
        }
        Ok(())
    }
}

/// What a search was hunting for.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SearchKind {
    /// Factorization `λI = Σ_j A_j B_j`, minimizing the Frobenius residual.
    Magajna { lambda: Complex64 },
    /// Lüders family maximizing the largest `|Im λ|` over the spectrum.
    LudersNonreal,
}

/// Re-verification of the best candidate along independent code paths.
#[derive(Debug, Clone)]
pub struct Certificate {
    /// Smallest eigenvalue of each reported coefficient (lefts, then rights).
    pub psd_mins: Vec<f64>,
    /// The headline figure recomputed from scratch on the re-assembled
    /// coefficients (apply-based for factorizations, a fresh eigensolve for
    /// the Lüders search).
    pub residual_recheck: f64,
}

/// Outcome of a multi-start search, sufficient to replay it bit-for-bit.
#[derive(Debug, Clone)]
pub struct SearchResult {
    pub kind: SearchKind,
    pub dim: usize,
    pub terms: usize,
    pub seed: u64,
    /// Number of restarts actually launched.
    pub restarts_used: usize,
    /// Index of the restart that produced the best candidate.
    pub best_restart: usize,
    /// Iterations consumed by the best run.
    pub iterations: usize,
    /// Factorization searches: `‖Σ_j A_j B_j - λI‖_F`.
    /// Lüders search: the best `max_i |Im λ_i|` found.
    pub residual: f64,
    /// Per-iteration residual of the best run (non-increasing for descent
    /// searches, best-so-far for the derivative-free one).
    pub residual_trace: Vec<f64>,
    /// Factors `C_j` with `A_j = C_j C_j*`.
    pub left_factors: Vec<CMatrix>,
    /// Factors `D_j` with `B_j = D_j D_j*`; empty for Lüders searches
    /// (`B_j = A_j`).
    pub right_factors: Vec<CMatrix>,
    pub certificate: Certificate,
    /// `Some(residual <= success_tol)` for factorization searches, `None`
    /// for exploratory maximization.
    pub succeeded: Option<bool>,
}

impl SearchResult {
    /// Assembled left coefficients `A_j = C_j C_j*`.
    pub fn left_coefficients(&self) -> Vec<CMatrix> {
        self.left_factors.iter().map(|c| c.matmul(&c.adjoint()).expect("square")).collect()
    }

    /// Assembled right coefficients `B_j = D_j D_j*` (the left ones for a
    /// Lüders search).
    pub fn right_coefficients(&self) -> Vec<CMatrix> {
        if self.right_factors.is_empty() {
            self.left_coefficients()
        } else {
            self.right_factors.iter().map(|d| d.matmul(&d.adjoint()).expect("square")).collect()
        }
    }
}
