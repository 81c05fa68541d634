//! Commutator budgets against the coordinate projection ladder: banded
//! families keep Σ_j ‖[A_j, P_r]‖²_{C₂} uniformly small, dense families
//! grow like the cut area r(N - r).
//!
//! ```bash
//! cargo run --example semidiagonality
//! ```

use elemop::semidiag::{band_family, dense_family, semidiag_profile, ProjectionLadder};

fn main() -> elemop::Result<()> {
    let n = 32;
    let ladder = ProjectionLadder::full(n);

    let banded = band_family(n, 1, 3, 7)?;
    let profile = semidiag_profile(&banded, &ladder)?;
    println!("tridiagonal family (N={n}, J=3):");
    println!("  max budget {:.4} (band bound 6·max|entry|² = {:.4})",
        profile.max_budget,
        6.0 * banded.iter().map(|a| a.max_abs()).fold(0.0f64, f64::max).powi(2));
    println!("  growth exponent vs r(N-r): {:?}", profile.growth_exponent);

    let dense = dense_family(n, 3, 7);
    let profile = semidiag_profile(&dense, &ladder)?;
    println!("dense family (N={n}, J=3):");
    println!("  max budget {:.1}", profile.max_budget);
    println!("  growth exponent vs r(N-r): {:?}", profile.growth_exponent);

    println!();
    println!("  r   banded s_r      dense s_r");
    let banded_profile = semidiag_profile(&banded, &ladder)?;
    let dense_profile = semidiag_profile(&dense, &ladder)?;
    for (b, d) in banded_profile.points.iter().zip(&dense_profile.points).step_by(4) {
        println!("{:4}   {:9.4}   {:12.2}", b.rank, b.budget, d.budget);
    }
    Ok(())
}
