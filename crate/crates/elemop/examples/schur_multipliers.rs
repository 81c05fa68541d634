//! Schur multipliers: symbols of diagonal families, entry-multiset spectra,
//! factorization norm bounds, and the reciprocal-norm growth probe for
//! Toeplitz symbols built from trigonometric atoms.
//!
//! ```bash
//! cargo run --example schur_multipliers
//! ```

use elemop::schur::{
    schur_norm_lower, schur_norm_upper, schur_spectrum, symbol_from_diagonal_family, toeplitz_from_atoms,
    wiener_pitt_probe, Atom,
};
use elemop::{CMatrix, Complex64, ElementaryOperator, Tolerance};

fn main() -> elemop::Result<()> {
    let tol = Tolerance::default();

    // diagonal coefficients act entrywise: Δ(X) = F ∘ X
    let a = CMatrix::diag(&[Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0)]);
    let b = CMatrix::diag(&[Complex64::new(3.0, 0.0), Complex64::new(4.0, 0.0)]);
    let op = ElementaryOperator::from_terms(vec![(a, b)])?;
    let sym = symbol_from_diagonal_family(&op, tol)?;
    println!("symbol of diag(1,2) against diag(3,4):");
    for i in 0..2 {
        println!("  [{:.0}, {:.0}]", sym.matrix[(i, 0)].re, sym.matrix[(i, 1)].re);
    }
    let formula = schur_spectrum(&sym, tol);
    let oracle = op.spectrum()?;
    println!("entry multiset vs Kronecker oracle, matching distance {:.1e}", formula.matching_distance(&oracle));

    // norm bounds: rank-one symbols are exactly max|u|·max|v|
    let u = [1.0, -0.5, 0.25];
    let v = [2.0, 0.5];
    let f = CMatrix::from_fn(3, 2, |i, k| Complex64::new(u[i] * v[k], 0.0));
    let sym = elemop::schur::SchurSymbol::explicit(f);
    let upper = schur_norm_upper(&sym, 1, 100);
    let lower = schur_norm_lower(&sym, 10, 3);
    println!("rank-one symbol: lower {lower:.6} <= norm <= upper {:.6} (expected 2)", upper.value);

    // Toeplitz probe: g = 2 + e^{-it} has an absolutely summable reciprocal
    // expansion, so the reciprocal norm stays near 1 at every size
    let tame = [Atom { c: Complex64::new(2.0, 0.0), x: 0.0 }, Atom { c: Complex64::new(1.0, 0.0), x: 1.0 }];
    let report = wiener_pitt_probe(&tame, &[8, 16, 32], 8, 150, 11)?;
    println!();
    println!("probe for g = 2 + e^(-it)   (inf |g| = 1 on the line):");
    println!("   N   inf|F|      lower      upper   route");
    for row in &report.rows {
        println!("  {:2}   {:.4}   {:8.4}   {:8.4}   {}", row.n, row.inf_abs, row.lower, row.upper, row.upper_route);
    }

    // a flatter atom pair has no dominant term and no summable expansion in
    // reach; the probe just logs what the certified bounds do as N grows
    let wild = [
        Atom { c: Complex64::new(1.0, 0.0), x: 0.0 },
        Atom { c: Complex64::new(0.9, 0.0), x: std::f64::consts::PI * std::f64::consts::SQRT_2 },
    ];
    let min_g =
        toeplitz_from_atoms(&wild, 64)?.min_entry_abs();
    let report = wiener_pitt_probe(&wild, &[8, 16, 32, 64], 8, 150, 11)?;
    println!();
    println!("probe for g = 1 + 0.9 e^(-i π√2 t)   (inf |g| over used offsets = {min_g:.4}):");
    println!("   N   inf|F|      lower      upper   route");
    for row in &report.rows {
        println!("  {:2}   {:.4}   {:8.4}   {:8.4}   {}", row.n, row.inf_abs, row.lower, row.upper, row.upper_route);
    }
    println!("monotone growth of the upper bound: {}", report.monotone_growth);
    println!("(exploratory data; the probe asserts nothing about the N -> ∞ limit)");
    Ok(())
}
