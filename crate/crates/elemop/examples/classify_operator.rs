//! Structural classification: formal selfadjointness and normality,
//! C₂-positivity, the Lüders property, and the Haagerup norms.
//!
//! ```bash
//! cargo run --example classify_operator
//! ```

use elemop::random::{random_psd, rng_from_seed};
use elemop::{CMatrix, CoefficientFamily, ElementaryOperator, Tolerance};

fn describe(name: &str, op: &ElementaryOperator) -> elemop::Result<()> {
    let c = op.classify(Tolerance::default())?;
    println!("{name}:");
    println!("  formally selfadjoint: {}", c.formally_selfadjoint);
    println!("  formally normal:      {}", c.formally_normal);
    println!("  C2-positive:          {}", c.c2_positive);
    println!("  Luders family:        {}", c.is_luders);
    println!("  ‖Σ A A*‖ = {:.6}, ‖Σ B* B‖ = {:.6}", c.haagerup_left, c.haagerup_right);
    let s = op.spectrum()?;
    println!("  spectrum real: {}, non-negative: {}", s.is_real(), s.is_nonneg());
    Ok(())
}

fn main() -> elemop::Result<()> {
    // orthogonal projections: the textbook Lüders operation
    let p1 = CMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, 0.0])?;
    let p2 = CMatrix::from_real(2, 2, &[0.0, 0.0, 0.0, 1.0])?;
    let luders = ElementaryOperator::new(CoefficientFamily::luders(vec![p1, p2])?);
    describe("projection pair (Lüders)", &luders)?;

    // a single shift term: not selfadjoint, nilpotent realization
    let s = CMatrix::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0])?;
    let shift = ElementaryOperator::from_terms(vec![(s.clone(), s)])?;
    describe("single shift term", &shift)?;

    // random PSD coefficients on both sides, no commutation assumed:
    // C2-positive because the realization is a sum of PSD tensors
    let mut rng = rng_from_seed(5);
    let lefts: Vec<CMatrix> = (0..3).map(|_| random_psd(3, &mut rng)).collect();
    let random_luders = ElementaryOperator::new(CoefficientFamily::luders(lefts)?);
    describe("random 3-term Lüders family", &random_luders)?;
    Ok(())
}
