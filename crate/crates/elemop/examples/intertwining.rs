//! Eigenvalue inclusion under intertwining: if Ψ is injective and
//! Ψ N = T Ψ with N normal, every eigenvalue of N is an eigenvalue of T.
//! The instances here make Ψ the first-k-columns embedding, so the
//! intertwining relation holds exactly and the inclusion is visible in the
//! block structure of T.
//!
//! ```bash
//! cargo run --example intertwining
//! ```

use elemop::linalg::eig_values;
use elemop::spectral::{check_inclusion, make_intertwined_instance};

fn main() -> elemop::Result<()> {
    for (k, q, seed) in [(2usize, 5usize, 1u64), (3, 6, 2), (4, 8, 3)] {
        let inst = make_intertwined_instance(k, q, seed)?;

        // the relation is exact by construction
        let lhs = inst.psi.matmul(&inst.n)?;
        let rhs = inst.t.matmul(&inst.psi)?;
        let relation = (&lhs - &rhs).frobenius_norm();

        let (ok, d) = check_inclusion(&inst, 1e-8)?;
        println!("k={k}, q={q}: ‖ΨN - TΨ‖ = {relation:.1e}, σ(N) ⊂ σ(T) within {d:.3e} -> {ok}");

        let eig_n = eig_values(&inst.n)?;
        let eig_t = eig_values(&inst.t)?;
        println!("  σ(N): {}", fmt(&eig_n));
        println!("  σ(T): {}", fmt(&eig_t));
    }
    Ok(())
}

fn fmt(zs: &[elemop::Complex64]) -> String {
    let mut sorted = zs.to_vec();
    sorted.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    sorted.iter().map(|z| format!("{:+.3}{:+.3}i", z.re, z.im)).collect::<Vec<_>>().join("  ")
}
