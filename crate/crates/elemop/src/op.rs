//! Elementary multiplication operators `Δ(X) = Σ_j A_j X B_j`: construction,
//! application, Kronecker realization, formal adjoints, composition, and
//! structural classification.
//!
//! The Kronecker realization is `K = Σ_j B_j^T ⊗ A_j`, the matrix of `Δ`
//! on the Hilbert-Schmidt space under column-stacking vectorization. In
//! finite dimension the operator and its Hilbert-Schmidt restriction
//! coincide, so `eig(K)` is the ground-truth spectrum for everything else
//! in the crate.

use std::sync::OnceLock;



use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::{commute, is_psd, CMatrix, Check, Tolerance, DEFAULT_KRON_CAP};
use crate::spectrum::{Provenance, SpectrumSet};

/// Ordered list of coefficient pairs `(A_j, B_j)` with `A_j` m×m and `B_j`
/// n×n. The squared-norm budgets `Σ‖A_j‖²`, `Σ‖B_j‖²` (operator norms) are
/// recorded at construction.
#[derive(Debug, Clone)]
pub struct CoefficientFamily {
    terms: Vec<(CMatrix, CMatrix)>,
    left_dim: usize,
    right_dim: usize,
    term_norms: Vec<(f64, f64)>,
    budget_left: f64,
    budget_right: f64,
}

impl CoefficientFamily {
    pub fn new(terms: Vec<(CMatrix, CMatrix)>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::Dimension("a coefficient family needs at least one term".into()));
        }
        let left_dim = terms[0].0.rows();
        let right_dim = terms[0].1.rows();
        for (j, (a, b)) in terms.iter().enumerate() {
            if !a.is_square() || a.rows() != left_dim {
                return Err(Error::Dimension(format!(
                    "term {j}: left coefficient is {}x{}, expected {left_dim}x{left_dim}",
                    a.rows(),
                    a.cols()
                )));
            }
            if !b.is_square() || b.rows() != right_dim {
                return Err(Error::Dimension(format!(
                    "term {j}: right coefficient is {}x{}, expected {right_dim}x{right_dim}",
                    b.rows(),
                    b.cols()
                )));
            }
            if !a.is_finite() || !b.is_finite() {
                return Err(Error::Parse(format!("term {j}: coefficients must be finite")));
            }
        }
        let term_norms: Vec<(f64, f64)> =
            terms.iter().map(|(a, b)| (a.op_norm(), b.op_norm())).collect();
        let budget_left = term_norms.iter().map(|(a, _)| a * a).sum();
        let budget_right = term_norms.iter().map(|(_, b)| b * b).sum();
        Ok(CoefficientFamily { terms, left_dim, right_dim, term_norms, budget_left, budget_right })
    }

    /// Lüders-style family with `B_j = A_j`.
    pub fn luders(lefts: Vec<CMatrix>) -> Result<Self> {
        Self::new(lefts.into_iter().map(|a| (a.clone(), a)).collect())
    }

    pub fn terms(&self) -> &[(CMatrix, CMatrix)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Left dimension m: `Δ` acts on m×n matrices.
    pub fn left_dim(&self) -> usize {
        self.left_dim
    }

    pub fn right_dim(&self) -> usize {
        self.right_dim
    }

    pub fn left_family(&self) -> Vec<CMatrix> {
        self.terms.iter().map(|(a, _)| a.clone()).collect()
    }

    pub fn right_family(&self) -> Vec<CMatrix> {
        self.terms.iter().map(|(_, b)| b.clone()).collect()
    }

    /// `Σ_j ‖A_j‖²` in operator norm.
    pub fn budget_left(&self) -> f64 {
        self.budget_left
    }

    /// `Σ_j ‖B_j‖²` in operator norm.
    pub fn budget_right(&self) -> f64 {
        self.budget_right
    }

    /// `Σ_j ‖A_j‖·‖B_j‖`, the natural scale of `Δ` as a map.
    pub fn norm_scale(&self) -> f64 {
        self.term_norms.iter().map(|(a, b)| a * b).sum()
    }
}

/// Structural classification of an elementary operator, read off its
/// Kronecker realization and its coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    /// `K` Hermitian within tolerance, i.e. `Δ̃ = Δ`.
    pub formally_selfadjoint: bool,
    /// `‖K K* - K* K‖` negligible.
    pub formally_normal: bool,
    /// `K` positive semidefinite within tolerance.
    pub c2_positive: bool,
    /// `m = n`, every `A_j = B_j` within tolerance and every `A_j` PSD.
    pub is_luders: bool,
    /// `‖Σ_j A_j A_j*‖`.
    pub haagerup_left: f64,
    /// `‖Σ_j B_j* B_j‖`.
    pub haagerup_right: f64,
}

/// An elementary operator: a coefficient family plus the lazily built,
/// immutable Kronecker realization.
#[derive(Debug, Clone)]
pub struct ElementaryOperator {
    family: CoefficientFamily,
    kron_cache: OnceLock<CMatrix>,
}

impl ElementaryOperator {
    pub fn new(family: CoefficientFamily) -> Self {
        ElementaryOperator { family, kron_cache: OnceLock::new() }
    }

    pub fn from_terms(terms: Vec<(CMatrix, CMatrix)>) -> Result<Self> {
        Ok(Self::new(CoefficientFamily::new(terms)?))
    }

    /// The identity map on m×n matrices (single term `A = I_m`, `B = I_n`).
    pub fn identity_map(m: usize, n: usize) -> Self {
        Self::from_terms(vec![(CMatrix::identity(m), CMatrix::identity(n))])
            .expect("identity coefficients are valid")
    }

    pub fn family(&self) -> &CoefficientFamily {
        &self.family
    }

    pub fn left_dim(&self) -> usize {
        self.family.left_dim()
    }

    pub fn right_dim(&self) -> usize {
        self.family.right_dim()
    }

    /// Apply `Δ` to an m×n matrix by direct summation `Σ_j A_j X B_j`.
    pub fn apply(&self, x: &CMatrix) -> Result<CMatrix> {
        if x.rows() != self.left_dim() || x.cols() != self.right_dim() {
            return Err(Error::Dimension(format!(
                "apply: operator acts on {}x{} matrices, got {}x{}",
                self.left_dim(),
                self.right_dim(),
                x.rows(),
                x.cols()
            )));
        }
        let mut out = CMatrix::zeros(x.rows(), x.cols());
        for (a, b) in self.family.terms() {
            let axb = a.matmul(x)?.matmul(b)?;
            out = &out + &axb;
        }
        Ok(out)
    }

    /// The mn×mn Kronecker realization `K = Σ_j B_j^T ⊗ A_j`, built once and
    /// cached (the family is immutable, so the cache never invalidates).
    pub fn kron_matrix(&self) -> Result<&CMatrix> {
        let mn = self.left_dim() * self.right_dim();
        if mn > DEFAULT_KRON_CAP {
            return Err(Error::Capacity { rows: mn, cols: mn, cap: DEFAULT_KRON_CAP });
        }
        if let Some(k) = self.kron_cache.get() {
            return Ok(k);
        }
        let k = self.assemble_kron()?;
        // Idempotent fill: concurrent writers compute identical values.
        let _ = self.kron_cache.set(k);
        Ok(self.kron_cache.get().expect("cache was just filled"))
    }

    fn assemble_kron(&self) -> Result<CMatrix> {
        let mn = self.left_dim() * self.right_dim();
        let mut k = CMatrix::zeros(mn, mn);
        for (a, b) in self.family.terms() {
            let term = b.transpose().kron_capped(a, DEFAULT_KRON_CAP)?;
            k = &k + &term;
        }
        Ok(k)
    }

    /// Ground-truth spectrum: eigenvalues of the Kronecker realization.
    pub fn spectrum(&self) -> Result<SpectrumSet> {
        self.spectrum_tol(Tolerance::default())
    }

    pub fn spectrum_tol(&self, tol: Tolerance) -> Result<SpectrumSet> {
        let k = self.kron_matrix()?;
        let values = linalg::eig_values(k)?;
        Ok(SpectrumSet::new(values, tol, Provenance::Oracle))
    }

    /// Formal adjoint `Δ̃(X) = Σ_j A_j* X B_j*`; its Kronecker matrix is
    /// exactly the conjugate transpose of this operator's.
    pub fn formal_adjoint(&self) -> ElementaryOperator {
        let terms = self
            .family
            .terms()
            .iter()
            .map(|(a, b)| (a.adjoint(), b.adjoint()))
            .collect();
        ElementaryOperator::new(CoefficientFamily::new(terms).expect("adjoint preserves validity"))
    }

    /// Composition `(Δ₁ ∘ Δ₂)(X) = Δ₁(Δ₂(X))`, with the J₁·J₂ coefficient
    /// pairs `(A_i A'_j, B'_j B_i)`.
    pub fn compose(&self, inner: &ElementaryOperator) -> Result<ElementaryOperator> {
        if self.left_dim() != inner.left_dim() || self.right_dim() != inner.right_dim() {
            return Err(Error::Dimension(format!(
                "compose: outer acts on {}x{}, inner on {}x{}",
                self.left_dim(),
                self.right_dim(),
                inner.left_dim(),
                inner.right_dim()
            )));
        }
        let mut terms = Vec::with_capacity(self.family.len() * inner.family.len());
        for (a, b) in self.family.terms() {
            for (a2, b2) in inner.family.terms() {
                terms.push((a.matmul(a2)?, b2.matmul(b)?));
            }
        }
        Ok(ElementaryOperator::new(CoefficientFamily::new(terms)?))
    }

    /// Classify the operator: formal selfadjointness/normality via `K`,
    /// C₂-positivity via PSD-ness of `K`, the Lüders property via the
    /// coefficients, and the two Haagerup norms.
    pub fn classify(&self, tol: Tolerance) -> Result<Classification> {
        let k = self.kron_matrix()?;
        let herm = crate::matrix::is_hermitian(k, tol)?;
        let normal = crate::matrix::is_normal(k, tol)?;
        let psd = if herm.ok { is_psd(k, tol)? } else { Check { ok: false, ..herm } };

        let m = self.left_dim();
        let mut is_luders = m == self.right_dim();
        if is_luders {
            for (a, b) in self.family.terms() {
                let diff = (a - b).op_norm();
                if diff > tol.threshold(a.op_norm().max(b.op_norm())) {
                    is_luders = false;
                    break;
                }
                if !is_psd(a, tol)?.ok {
                    is_luders = false;
                    break;
                }
            }
        }

        let mut left_sum = CMatrix::zeros(m, m);
        for (a, _) in self.family.terms() {
            left_sum = &left_sum + &a.matmul(&a.adjoint())?;
        }
        let n = self.right_dim();
        let mut right_sum = CMatrix::zeros(n, n);
        for (_, b) in self.family.terms() {
            right_sum = &right_sum + &b.adjoint().matmul(b)?;
        }

        Ok(Classification {
            formally_selfadjoint: herm.ok,
            formally_normal: normal.ok,
            c2_positive: psd.ok,
            is_luders,
            haagerup_left: left_sum.op_norm(),
            haagerup_right: right_sum.op_norm(),
        })
    }

    /// Left coefficients pairwise commuting within `tol`? Returns the first
    /// offending pair on failure.
    pub fn left_family_commutes(
        &self,
        tol: Tolerance,
    ) -> Result<std::result::Result<(), (usize, usize, f64)>> {
        let lefts = self.family.left_family();
        for i in 0..lefts.len() {
            for j in i + 1..lefts.len() {
                let chk = commute(&lefts[i], &lefts[j], tol)?;
                if !chk.ok {
                    return Ok(Err((i, j, chk.residual)));
                }
            }
        }
        Ok(Ok(()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use crate::random::{random_matrix, rng_from_seed};

    fn r(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn ci(im: f64) -> Complex64 {
        Complex64::new(0.0, im)
    }

    #[test]
    fn identity_map_applies_identically() {
        let d = ElementaryOperator::identity_map(2, 3);
        let x = CMatrix::from_real(2, 3, &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0]).unwrap();
        assert_eq!(d.apply(&x).unwrap(), x);
    }

    #[test]
    fn row_scaling_example() {
        // A = diag(1,2), B = I: Δ([[1,1],[1,1]]) = [[1,1],[2,2]]
        let a = CMatrix::diag(&[r(1.0), r(2.0)]);
        let d = ElementaryOperator::from_terms(vec![(a, CMatrix::identity(2))]).unwrap();
        let x = CMatrix::from_real(2, 2, &[1.0, 1.0, 1.0, 1.0]).unwrap();
        let y = d.apply(&x).unwrap();
        assert_eq!(y, CMatrix::from_real(2, 2, &[1.0, 1.0, 2.0, 2.0]).unwrap());
    }

    #[test]
    fn apply_rejects_wrong_shape() {
        let d = ElementaryOperator::identity_map(2, 2);
        assert!(d.apply(&CMatrix::zeros(3, 2)).is_err());
    }

    #[test]
    fn kron_matrix_scalar_and_diagonal() {
        let d = ElementaryOperator::from_terms(vec![(
            CMatrix::from_real(1, 1, &[2.0]).unwrap(),
            CMatrix::from_real(1, 1, &[3.0]).unwrap(),
        )])
        .unwrap();
        assert_eq!(d.kron_matrix().unwrap()[(0, 0)], r(6.0));

        let a = CMatrix::diag(&[r(1.0), r(2.0)]);
        let b = CMatrix::diag(&[r(3.0), r(4.0)]);
        let d = ElementaryOperator::from_terms(vec![(a, b)]).unwrap();
        let k = d.kron_matrix().unwrap();
        assert_eq!(*k, CMatrix::diag(&[r(3.0), r(6.0), r(4.0), r(8.0)]));
    }

    #[test]
    fn kron_action_matches_apply_on_random_operator() {
        let mut rng = rng_from_seed(17);
        for _ in 0..20 {
            let terms: Vec<_> = (0..3)
                .map(|_| (random_matrix(3, 3, &mut rng), random_matrix(4, 4, &mut rng)))
                .collect();
            let d = ElementaryOperator::from_terms(terms).unwrap();
            let k = d.kron_matrix().unwrap().clone();
            let scale = d.family().norm_scale();
            for _ in 0..5 {
                let x = random_matrix(3, 4, &mut rng);
                let lhs = d.apply(&x).unwrap().vec_cols();
                let rhs = k.matvec(&x.vec_cols()).unwrap();
                let err: f64 =
                    lhs.iter().zip(&rhs).map(|(l, r)| (l - r).norm_sqr()).sum::<f64>().sqrt();
                assert!(err <= 1e-12 * scale * x.frobenius_norm());
            }
        }
    }

    #[test]
    fn spectrum_of_left_multiplication() {
        // A = diag(1,2), B = I: spectrum {1,1,2,2}
        let a = CMatrix::diag(&[r(1.0), r(2.0)]);
        let d = ElementaryOperator::from_terms(vec![(a, CMatrix::identity(2))]).unwrap();
        let s = d.spectrum().unwrap();
        let want = vec![r(1.0), r(1.0), r(2.0), r(2.0)];
        assert!(crate::spectrum::matching_distance(&s.values, &want) < 1e-12);

        // diagonal pair: entrywise products {3,4,6,8}
        let a = CMatrix::diag(&[r(1.0), r(2.0)]);
        let b = CMatrix::diag(&[r(3.0), r(4.0)]);
        let d = ElementaryOperator::from_terms(vec![(a, b)]).unwrap();
        let s = d.spectrum().unwrap();
        let want = vec![r(3.0), r(4.0), r(6.0), r(8.0)];
        assert!(crate::spectrum::matching_distance(&s.values, &want) < 1e-12);
    }

    #[test]
    fn formal_adjoint_scalars_and_involution() {
        let d = ElementaryOperator::from_terms(vec![(
            CMatrix::new(1, 1, vec![ci(1.0)]).unwrap(),
            CMatrix::new(1, 1, vec![ci(2.0)]).unwrap(),
        )])
        .unwrap();
        let adj = d.formal_adjoint();
        assert_eq!(adj.family().terms()[0].0[(0, 0)], ci(-1.0));
        assert_eq!(adj.family().terms()[0].1[(0, 0)], ci(-2.0));

        // involution is exact
        let mut rng = rng_from_seed(23);
        let terms: Vec<_> =
            (0..2).map(|_| (random_matrix(3, 3, &mut rng), random_matrix(2, 2, &mut rng))).collect();
        let d = ElementaryOperator::from_terms(terms).unwrap();
        let dd = d.formal_adjoint().formal_adjoint();
        for ((a1, b1), (a2, b2)) in d.family().terms().iter().zip(dd.family().terms()) {
            assert_eq!(a1, a2);
            assert_eq!(b1, b2);
        }
    }

    #[test]
    fn adjoint_of_hermitian_coefficients_is_identical() {
        let mut rng = rng_from_seed(53);
        let terms: Vec<_> = (0..2)
            .map(|_| {
                (
                    random_matrix(3, 3, &mut rng).hermitian_part(),
                    random_matrix(2, 2, &mut rng).hermitian_part(),
                )
            })
            .collect();
        let d = ElementaryOperator::from_terms(terms).unwrap();
        let adj = d.formal_adjoint();
        for ((a1, b1), (a2, b2)) in d.family().terms().iter().zip(adj.family().terms()) {
            assert_eq!(a1, a2);
            assert_eq!(b1, b2);
        }
    }

    #[test]
    fn adjoint_kron_is_exactly_conjugate_transpose() {
        let mut rng = rng_from_seed(29);
        for _ in 0..10 {
            let terms: Vec<_> = (0..3)
                .map(|_| (random_matrix(3, 3, &mut rng), random_matrix(3, 3, &mut rng)))
                .collect();
            let d = ElementaryOperator::from_terms(terms).unwrap();
            let lhs = d.formal_adjoint().kron_matrix().unwrap().clone();
            let rhs = d.kron_matrix().unwrap().adjoint();
            // entrywise bit equality: conjugation commutes with the assembly
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn compose_identity_and_product() {
        let mut rng = rng_from_seed(31);
        let terms: Vec<_> =
            (0..2).map(|_| (random_matrix(2, 2, &mut rng), random_matrix(3, 3, &mut rng))).collect();
        let d = ElementaryOperator::from_terms(terms).unwrap();
        let id = ElementaryOperator::identity_map(2, 3);
        let comp = d.compose(&id).unwrap();
        for ((a1, b1), (a2, b2)) in d.family().terms().iter().zip(comp.family().terms()) {
            assert!((a1 - a2).frobenius_norm() < 1e-14);
            assert!((b1 - b2).frobenius_norm() < 1e-14);
        }

        // K(Δ₁ ∘ Δ₂) = K₁ K₂
        let terms2: Vec<_> =
            (0..3).map(|_| (random_matrix(2, 2, &mut rng), random_matrix(3, 3, &mut rng))).collect();
        let d2 = ElementaryOperator::from_terms(terms2).unwrap();
        let comp = d.compose(&d2).unwrap();
        let k = comp.kron_matrix().unwrap();
        let prod = d.kron_matrix().unwrap().matmul(d2.kron_matrix().unwrap()).unwrap();
        let scale = prod.frobenius_norm().max(1.0);
        assert!((k - &prod).frobenius_norm() <= 1e-12 * scale);
    }

    #[test]
    fn classify_projection_family_is_luders() {
        let p1 = CMatrix::diag(&[r(1.0), r(0.0)]);
        let p2 = CMatrix::diag(&[r(0.0), r(1.0)]);
        let d = ElementaryOperator::new(CoefficientFamily::luders(vec![p1, p2]).unwrap());
        let c = d.classify(Tolerance::default()).unwrap();
        assert!(c.formally_selfadjoint);
        assert!(c.formally_normal);
        assert!(c.c2_positive);
        assert!(c.is_luders);
        assert!((c.haagerup_left - 1.0).abs() < 1e-12);
        assert!((c.haagerup_right - 1.0).abs() < 1e-12);
        let s = d.spectrum().unwrap();
        let want = vec![r(1.0), r(0.0), r(0.0), r(1.0)];
        assert!(crate::spectrum::matching_distance(&s.values, &want) < 1e-12);
    }

    #[test]
    fn classify_shift_term_not_selfadjoint() {
        let s = CMatrix::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        let d = ElementaryOperator::from_terms(vec![(s.clone(), s)]).unwrap();
        let c = d.classify(Tolerance::default()).unwrap();
        assert!(!c.formally_selfadjoint);
        assert!(!c.is_luders);
    }

    #[test]
    fn random_luders_family_is_c2_positive() {
        let mut rng = rng_from_seed(37);
        for _ in 0..5 {
            let lefts: Vec<_> = (0..3).map(|_| crate::random::random_psd(3, &mut rng)).collect();
            let d = ElementaryOperator::new(CoefficientFamily::luders(lefts).unwrap());
            let c = d.classify(Tolerance::default()).unwrap();
            assert!(c.is_luders);
            assert!(c.c2_positive);
            // C₂-positive ⇒ spectrum ⊂ ℝ₊ here
            assert!(d.spectrum().unwrap().is_nonneg());
        }
    }

    #[test]
    fn family_rejects_mixed_dimensions() {
        let a = CMatrix::identity(2);
        let b = CMatrix::identity(3);
        assert!(CoefficientFamily::new(vec![(a.clone(), b.clone()), (b, a)]).is_err());
        assert!(CoefficientFamily::new(vec![]).is_err());
    }
}
