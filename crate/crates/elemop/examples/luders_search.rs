//! Hunting for Lüders operators with non-real spectrum: maximize the
//! largest |Im λ| over families A_j = C_j C_j* (B_j = A_j) with
//! derivative-free simplex search. Single-term families are provably real;
//! the interesting regime starts at two terms.
//!
//! ```bash
//! cargo run --example luders_search
//! ```

use elemop::search::{luders_nonreal_search, SearchConfig};

fn main() -> elemop::Result<()> {
    // J = 1 sanity: the realization A^T ⊗ A of a PSD A is PSD, score ~ 0
    let config = SearchConfig { restarts: 2, iters: 80, seed: 5, success_tol: 1e-8 };
    let res = luders_nonreal_search(2, 1, &config)?;
    println!("d=2, J=1: best max|Im λ| = {:.3e} (must be ~0)", res.residual);

    // free search at small sizes; every run is seeded and reproducible
    for (d, j) in [(3usize, 3usize), (4, 3)] {
        let config = SearchConfig { restarts: 3, iters: 250, seed: 1000 + d as u64, success_tol: 1e-8 };
        let res = luders_nonreal_search(d, j, &config)?;
        println!(
            "d={d}, J={j}: best max|Im λ| = {:.6} (seed {}, restart {}, {} iterations)",
            res.residual, res.seed, res.best_restart, res.iterations
        );
        println!(
            "  certificate: recheck {:.6}, min coefficient eigenvalue {:+.1e}",
            res.certificate.residual_recheck,
            res.certificate.psd_mins.iter().fold(f64::INFINITY, |a, &b| a.min(b))
        );
    }
    println!("(values are logged observations, not claims of optimality)");
    Ok(())
}
