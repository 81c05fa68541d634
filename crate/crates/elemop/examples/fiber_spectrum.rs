//! The fiber formula: when only the LEFT family commutes and is normal,
//! the spectrum is the union over joint eigenvalues λ^(p) of the spectra
//! of the fiber combinations Σ_j λ_j^(p) B_j — the right side is
//! arbitrary. With PSD coefficients this forces a non-negative spectrum.
//!
//! ```bash
//! cargo run --example fiber_spectrum
//! ```

use elemop::random::{commuting_normal_family, commuting_psd_family, random_matrix, random_psd, rng_from_seed};
use elemop::spectral::{fiber_spectrum, luders_check};
use elemop::{ElementaryOperator, Tolerance};

fn main() -> elemop::Result<()> {
    let tol = Tolerance::default();
    let mut rng = rng_from_seed(31);

    // commuting normal left side, fully arbitrary right side
    let lefts = commuting_normal_family(3, 3, 1.0, &mut rng);
    let terms: Vec<_> = lefts.into_iter().map(|a| (a, random_matrix(4, 4, &mut rng))).collect();
    let op = ElementaryOperator::from_terms(terms)?;

    let formula = fiber_spectrum(&op, tol)?;
    let oracle = op.spectrum()?;
    println!("fiber formula: {} eigenvalues from {} fibers of size {}", formula.len(), 3, 4);
    println!("Hausdorff distance fiber formula vs oracle: {:.3e}", formula.hausdorff_distance(&oracle));

    // positivity: commuting PSD left family, arbitrary PSD right family
    let lefts = commuting_psd_family(3, 3, 1.0, &mut rng);
    let terms: Vec<_> = lefts.into_iter().map(|a| (a, random_psd(3, &mut rng))).collect();
    let op = ElementaryOperator::from_terms(terms)?;
    let report = luders_check(&op, tol)?;
    println!();
    println!("positivity check on a hypothesis-satisfying instance:");
    println!("  hypotheses met: {}", report.hypotheses_met);
    println!("  min Re σ  = {:+.3e}", report.min_re);
    println!("  max |Im σ| = {:.3e}", report.max_abs_im);
    println!("  verdict: {}", report.verdict.as_str());

    // break the hypothesis: non-commuting left side is flagged, not judged
    let a1 = random_psd(3, &mut rng);
    let a2 = random_psd(3, &mut rng);
    let op = ElementaryOperator::from_terms(vec![
        (a1, random_psd(3, &mut rng)),
        (a2, random_psd(3, &mut rng)),
    ])?;
    let report = luders_check(&op, tol)?;
    println!("non-commuting left family: verdict {}", report.verdict.as_str());
    Ok(())
}
