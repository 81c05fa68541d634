//! Reciprocal-norm growth probe: for a trigonometric symbol bounded away
//! from zero, tabulate the estimated multiplier norm of `1/F` across
//! section sizes. The probe emits data and a monotone-growth flag; it
//! asserts nothing about the limit.

use crate::error::{Error, Result};
use crate::random::derive_seed;

use super::norm::{ap_reciprocal_bound, schur_norm_lower, schur_norm_upper, toeplitz_character_bound};
use super::{toeplitz_from_atoms, Atom};

/// One section size of the probe table.
#[derive(Debug, Clone, Copy)]
pub struct ProbeRow {
    pub n: usize,
    /// `inf |g|` over the offsets the N×N section uses.
    pub inf_abs: f64,
    /// Sampled lower bound for the multiplier norm of `1/F`.
    pub lower: f64,
    /// Best certified factorization upper bound for `1/F` (ALS, cyclic
    /// characters, and the Neumann expansion when it converges).
    pub upper: f64,
    /// Which upper-bound route won: "als", "character", or "neumann".
    pub upper_route: &'static str,
}

#[derive(Debug, Clone)]
pub struct ProbeReport {
    pub rows: Vec<ProbeRow>,
    /// Upper bounds strictly increase along the size list.
    pub monotone_growth: bool,
}

/// Probe the reciprocal multiplier norm of the atom-sum symbol over the
/// given section sizes.
pub fn wiener_pitt_probe(
    atoms: &[Atom],
    sizes: &[usize],
    samples: usize,
    sweeps: usize,
    seed: u64,
) -> Result<ProbeReport> {
    if atoms.is_empty() {
        return Err(Error::Config("wiener_pitt_probe: empty atom list".into()));
    }
    if sizes.is_empty() {
        return Err(Error::Config("wiener_pitt_probe: empty size list".into()));
    }
    let mut rows = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let symbol = toeplitz_from_atoms(atoms, n)?;
        let inf_abs = symbol.min_entry_abs();
        if !(inf_abs > 0.0) {
            return Err(Error::Precondition {
                what: format!("wiener_pitt_probe: symbol vanishes on an offset used by the {n}x{n} section"),
                residual: inf_abs,
            });
        }
        let recip = symbol.reciprocal()?;
        let lower = schur_norm_lower(&recip, samples, derive_seed(seed, n as u64));

        let als = schur_norm_upper(&recip, n, sweeps);
        let chr = toeplitz_character_bound(&recip);
        let neu = ap_reciprocal_bound(atoms, n);
        let mut upper = als.value;
        let mut upper_route = "als";
        if let Some(b) = chr {
            if b.value < upper {
                upper = b.value;
                upper_route = "character";
            }
        }
        if let Some(b) = neu {
            if b.value < upper {
                upper = b.value;
                upper_route = "neumann";
            }
        }
        rows.push(ProbeRow { n, inf_abs, lower, upper, upper_route });
    }
    let monotone_growth = rows.windows(2).all(|w| w[1].upper > w[0].upper * (1.0 + 1e-12));
    Ok(ProbeReport { rows, monotone_growth })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn r(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn constant_symbol_probe_is_flat_at_one() {
        // g ≡ 1: reciprocal norm 1 at every N
        let atoms = [Atom { c: r(1.0), x: 0.0 }];
        let rep = wiener_pitt_probe(&atoms, &[4, 8, 16], 5, 50, 1).unwrap();
        for row in &rep.rows {
            assert!((row.inf_abs - 1.0).abs() < 1e-12);
            assert!((row.lower - 1.0).abs() <= 1e-9);
            assert!((row.upper - 1.0).abs() <= 1e-9, "N={}: upper {}", row.n, row.upper);
        }
        assert!(!rep.monotone_growth);
    }

    #[test]
    fn invertible_two_atom_symbol_stays_bounded() {
        // g = 2 + e^{-it}: reciprocal coefficients sum to 1, upper ~ 1
        let atoms = [Atom { c: r(2.0), x: 0.0 }, Atom { c: r(1.0), x: 1.0 }];
        let rep = wiener_pitt_probe(&atoms, &[8, 16, 32], 5, 100, 2).unwrap();
        for row in &rep.rows {
            assert!((row.inf_abs - 1.0).abs() <= 1e-12 || row.inf_abs >= 1.0 - 1e-12);
            assert!(row.upper <= 1.1, "N={}: upper {}", row.n, row.upper);
            assert!(row.lower <= row.upper + 1e-9);
        }
    }

    #[test]
    fn vanishing_symbol_is_rejected() {
        // g(t) = 1 - e^{-i·0·t} = 0 identically
        let atoms = [Atom { c: r(1.0), x: 0.0 }, Atom { c: r(-1.0), x: 0.0 }];
        assert!(wiener_pitt_probe(&atoms, &[4], 3, 20, 0).is_err());
    }
}
