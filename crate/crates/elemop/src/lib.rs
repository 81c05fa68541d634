//! A verified numerical laboratory for elementary multiplication operators
//! `Δ(X) = Σ_j A_j X B_j` on finite-dimensional matrix spaces.
//!
//! The crate realizes `Δ` as the Kronecker matrix `Σ_j B_j^T ⊗ A_j` under
//! column-stacking vectorization, computes spectra with its own dense
//! complex eigensolvers, checks the closed-form spectral theorems for
//! commuting normal coefficient families against that oracle, profiles
//! 2-semidiagonality commutator budgets, estimates Schur-multiplier norms,
//! and runs seeded optimization searches over the PSD cone for operators
//! with surprising spectra.
//!
//! Start with the runnable examples (`cargo run --example kronecker_realization`,
//! `... --example product_spectrum`, and friends), or with the `elemop`
//! binary for file-driven batch runs.

pub mod cli;
pub mod error;
pub mod io;
pub mod linalg;
pub mod matrix;
pub mod op;
pub mod random;
pub mod schur;
pub mod search;
pub mod selftest;
pub mod semidiag;
pub mod spectral;
pub mod spectrum;
pub mod verify;

pub use error::{Error, Result};
pub use matrix::{CMatrix, Check, Tolerance, DEFAULT_KRON_CAP};
pub use num_complex::Complex64;
pub use op::{Classification, CoefficientFamily, ElementaryOperator};
pub use spectrum::{Provenance, SpectrumSet};
