//! Schur (entrywise) multipliers: diagonal-coefficient elementary operators
//! act as `X ↦ F ∘ X` for a symbol matrix `F`, the matrix units are
//! eigenvectors, and Toeplitz symbols `F[i,k] = g(k-i)` discretize
//! convolution-type multipliers built from trigonometric atom sums.

mod norm;
mod probe;

pub use norm::{
    ap_reciprocal_bound, schur_norm_lower, schur_norm_upper, toeplitz_character_bound,
    SchurNormBound,
};
pub use probe::{wiener_pitt_probe, ProbeReport, ProbeRow};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::{CMatrix, Tolerance};
use crate::op::ElementaryOperator;
use crate::spectrum::{Provenance, SpectrumSet};

/// One atom of a trigonometric sum `g(t) = Σ_m c_m e^{-i t x_m}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom {
    pub c: Complex64,
    pub x: f64,
}

/// Evaluate the atom sum at `t`.
pub fn eval_atoms(atoms: &[Atom], t: f64) -> Complex64 {
    atoms.iter().map(|a| a.c * Complex64::from_polar(1.0, -t * a.x)).sum()
}

/// Where a symbol came from.
#[derive(Debug, Clone, PartialEq)]
pub enum SymbolOrigin {
    /// Extracted from a diagonal-coefficient elementary operator.
    FromFamily,
    /// Toeplitz, with the sample vector `g(-(N-1)), ..., g(N-1)`.
    Toeplitz { samples: Vec<Complex64> },
    Explicit,
}

/// An entrywise-multiplier symbol.
#[derive(Debug, Clone, PartialEq)]
pub struct SchurSymbol {
    pub matrix: CMatrix,
    pub origin: SymbolOrigin,
}

impl SchurSymbol {
    pub fn explicit(matrix: CMatrix) -> Self {
        SchurSymbol { matrix, origin: SymbolOrigin::Explicit }
    }

    pub fn rows(&self) -> usize {
        self.matrix.rows()
    }

    pub fn cols(&self) -> usize {
        self.matrix.cols()
    }

    /// Entrywise (Hadamard) action `F ∘ X`.
    pub fn apply(&self, x: &CMatrix) -> Result<CMatrix> {
        hadamard(&self.matrix, x)
    }

    /// Entrywise reciprocal symbol `1/F`. Fails on a vanishing entry.
    pub fn reciprocal(&self) -> Result<SchurSymbol> {
        let mut min_abs = f64::INFINITY;
        for z in self.matrix.entries() {
            min_abs = min_abs.min(z.norm());
        }
        if !(min_abs > 0.0) {
            return Err(Error::Precondition {
                what: "reciprocal symbol undefined: some entry vanishes".into(),
                residual: min_abs,
            });
        }
        let m = CMatrix::from_fn(self.rows(), self.cols(), |i, k| self.matrix[(i, k)].inv());
        let origin = match &self.origin {
            SymbolOrigin::Toeplitz { samples } => SymbolOrigin::Toeplitz {
                samples: samples.iter().map(|z| z.inv()).collect(),
            },
            _ => SymbolOrigin::Explicit,
        };
        Ok(SchurSymbol { matrix: m, origin })
    }

    /// Smallest entry modulus (for Toeplitz symbols this is the infimum of
    /// `|g|` over the offsets the section uses).
    pub fn min_entry_abs(&self) -> f64 {
        self.matrix.entries().iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min)
    }
}

/// Entrywise product of equal-shape matrices.
pub fn hadamard(f: &CMatrix, x: &CMatrix) -> Result<CMatrix> {
    if f.rows() != x.rows() || f.cols() != x.cols() {
        return Err(Error::Dimension(format!(
            "hadamard: {}x{} symbol against {}x{} matrix",
            f.rows(),
            f.cols(),
            x.rows(),
            x.cols()
        )));
    }
    Ok(CMatrix::from_fn(f.rows(), f.cols(), |i, k| f[(i, k)] * x[(i, k)]))
}

/// Extract the symbol of a diagonal-coefficient operator:
/// `F[i,k] = Σ_j A_j[i,i] · B_j[k,k]`, so that `Δ(X) = F ∘ X`.
pub fn symbol_from_diagonal_family(op: &ElementaryOperator, tol: Tolerance) -> Result<SchurSymbol> {
    for (j, (a, b)) in op.family().terms().iter().enumerate() {
        for (side, m) in [("left", a), ("right", b)] {
            let off = linalg::offdiag_norm(m);
            if off > tol.threshold(m.op_norm()) {
                return Err(Error::Precondition {
                    what: format!("symbol_from_diagonal_family: {side} coefficient {j} is not diagonal"),
                    residual: off,
                });
            }
        }
    }
    let m = op.left_dim();
    let n = op.right_dim();
    let f = CMatrix::from_fn(m, n, |i, k| {
        op.family()
            .terms()
            .iter()
            .map(|(a, b)| a[(i, i)] * b[(k, k)])
            .sum()
    });
    Ok(SchurSymbol { matrix: f, origin: SymbolOrigin::FromFamily })
}

/// Spectrum of the multiplier: every matrix unit `E_{ik}` is an eigenvector
/// with eigenvalue `F[i,k]`, so the spectrum is the entry multiset.
pub fn schur_spectrum(symbol: &SchurSymbol, tol: Tolerance) -> SpectrumSet {
    SpectrumSet::new(symbol.matrix.entries().to_vec(), tol, Provenance::Formula)
}

/// Build an N×N Toeplitz symbol from samples of `g` on the integer offsets
/// `-(N-1), ..., N-1` (exactly `2N-1` samples).
pub fn toeplitz_symbol(samples: &[Complex64], n: usize) -> Result<SchurSymbol> {
    if n == 0 {
        return Err(Error::Dimension("toeplitz_symbol: size must be positive".into()));
    }
    if samples.len() != 2 * n - 1 {
        return Err(Error::Parse(format!(
            "toeplitz_symbol: need {} samples covering offsets -{}..{}, got {}",
            2 * n - 1,
            n - 1,
            n - 1,
            samples.len()
        )));
    }
    let m = CMatrix::from_fn(n, n, |i, k| samples[k + (n - 1) - i]);
    Ok(SchurSymbol { matrix: m, origin: SymbolOrigin::Toeplitz { samples: samples.to_vec() } })
}

/// Toeplitz symbol of a trigonometric atom sum, sampled at integer offsets.
pub fn toeplitz_from_atoms(atoms: &[Atom], n: usize) -> Result<SchurSymbol> {
    let samples: Vec<Complex64> = (-(n as i64 - 1)..=(n as i64 - 1))
        .map(|t| eval_atoms(atoms, t as f64))
        .collect();
    toeplitz_symbol(&samples, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{rng_from_seed, unit_disc_c64};

    fn r(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn symbol_of_diagonal_pair() {
        // A = diag(1,2), B = diag(3,4): F = [[3,4],[6,8]]
        let a = CMatrix::diag(&[r(1.0), r(2.0)]);
        let b = CMatrix::diag(&[r(3.0), r(4.0)]);
        let op = ElementaryOperator::from_terms(vec![(a, b)]).unwrap();
        let sym = symbol_from_diagonal_family(&op, Tolerance::default()).unwrap();
        assert_eq!(sym.matrix, CMatrix::from_real(2, 2, &[3.0, 4.0, 6.0, 8.0]).unwrap());
    }

    #[test]
    fn projection_pairs_give_identity_symbol() {
        let p1 = CMatrix::diag(&[r(1.0), r(0.0)]);
        let p2 = CMatrix::diag(&[r(0.0), r(1.0)]);
        let op =
            ElementaryOperator::from_terms(vec![(p1.clone(), p1), (p2.clone(), p2)]).unwrap();
        let sym = symbol_from_diagonal_family(&op, Tolerance::default()).unwrap();
        assert_eq!(sym.matrix, CMatrix::identity(2));
    }

    #[test]
    fn non_diagonal_coefficient_is_rejected() {
        let s = CMatrix::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        let op = ElementaryOperator::from_terms(vec![(s, CMatrix::identity(2))]).unwrap();
        assert!(symbol_from_diagonal_family(&op, Tolerance::default()).is_err());
    }

    #[test]
    fn entrywise_action_matches_apply() {
        let mut rng = rng_from_seed(41);
        for _ in 0..10 {
            let terms: Vec<_> = (0..3)
                .map(|_| {
                    let da: Vec<Complex64> = (0..3).map(|_| unit_disc_c64(&mut rng)).collect();
                    let db: Vec<Complex64> = (0..4).map(|_| unit_disc_c64(&mut rng)).collect();
                    (CMatrix::diag(&da), CMatrix::diag(&db))
                })
                .collect();
            let op = ElementaryOperator::from_terms(terms).unwrap();
            let sym = symbol_from_diagonal_family(&op, Tolerance::default()).unwrap();
            for _ in 0..5 {
                let x = crate::random::random_matrix(3, 4, &mut rng);
                let via_apply = op.apply(&x).unwrap();
                let via_symbol = sym.apply(&x).unwrap();
                assert!((&via_apply - &via_symbol).frobenius_norm() <= 1e-12 * x.frobenius_norm());
            }
        }
    }

    #[test]
    fn schur_spectrum_is_entry_multiset() {
        let f = SchurSymbol::explicit(CMatrix::from_real(2, 2, &[1.0, 2.0, 3.0, 4.0]).unwrap());
        let s = schur_spectrum(&f, Tolerance::default());
        let want = vec![r(1.0), r(2.0), r(3.0), r(4.0)];
        assert!(crate::spectrum::matching_distance(&s.values, &want) == 0.0);
    }

    #[test]
    fn schur_spectrum_agrees_with_kron_oracle() {
        let mut rng = rng_from_seed(43);
        let terms: Vec<_> = (0..2)
            .map(|_| {
                let da: Vec<Complex64> = (0..3).map(|_| unit_disc_c64(&mut rng)).collect();
                let db: Vec<Complex64> = (0..3).map(|_| unit_disc_c64(&mut rng)).collect();
                (CMatrix::diag(&da), CMatrix::diag(&db))
            })
            .collect();
        let op = ElementaryOperator::from_terms(terms).unwrap();
        let sym = symbol_from_diagonal_family(&op, Tolerance::default()).unwrap();
        let formula = schur_spectrum(&sym, Tolerance::default());
        let oracle = op.spectrum().unwrap();
        assert!(formula.hausdorff_distance(&oracle) <= 1e-10);
    }

    #[test]
    fn toeplitz_sampling_conventions() {
        // g ≡ 1: all-ones symbol (point mass at frequency 0)
        let sym = toeplitz_from_atoms(&[Atom { c: r(1.0), x: 0.0 }], 3).unwrap();
        for z in sym.matrix.entries() {
            assert!((z - r(1.0)).norm() < 1e-15);
        }

        // g(t) = e^{-it}: F[i,k] = e^{-i(k-i)}, all entries modulus 1
        let sym = toeplitz_from_atoms(&[Atom { c: r(1.0), x: 1.0 }], 4).unwrap();
        for i in 0..4 {
            for k in 0..4 {
                let want = Complex64::from_polar(1.0, -((k as f64) - (i as f64)));
                assert!((sym.matrix[(i, k)] - want).norm() < 1e-14);
                assert!((sym.matrix[(i, k)].norm() - 1.0).abs() < 1e-14);
            }
        }

        assert!(toeplitz_symbol(&[r(1.0); 4], 3).is_err());
    }

    #[test]
    fn two_atom_symbol_stays_away_from_zero() {
        // g(t) = 1 + 0.9 e^{-i π√2 t}: inf over used offsets stays >= 0.1
        let atoms = [
            Atom { c: r(1.0), x: 0.0 },
            Atom { c: r(0.9), x: std::f64::consts::PI * std::f64::consts::SQRT_2 },
        ];
        let sym = toeplitz_from_atoms(&atoms, 16).unwrap();
        assert!(sym.min_entry_abs() >= 0.1);
    }

    #[test]
    fn reciprocal_is_entrywise_inverse() {
        let atoms = [Atom { c: r(2.0), x: 0.0 }, Atom { c: r(1.0), x: 1.0 }];
        let sym = toeplitz_from_atoms(&atoms, 8).unwrap();
        let rec = sym.reciprocal().unwrap();
        let mut rng = rng_from_seed(47);
        let x = crate::random::random_matrix(8, 8, &mut rng);
        let roundtrip = rec.apply(&sym.apply(&x).unwrap()).unwrap();
        assert!((&roundtrip - &x).frobenius_norm() <= 1e-10 * x.frobenius_norm());

        let zero = SchurSymbol::explicit(CMatrix::zeros(2, 2));
        assert!(zero.reciprocal().is_err());
    }
}
