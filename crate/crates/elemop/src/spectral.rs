//! Formula-based spectra for operators with commuting normal coefficients,
//! and the constructions that exercise eigenvalue inclusion under
//! intertwining.
//!
//! For a commuting normal family the joint spectrum is the set of joint
//! eigenvalue vectors read off a simultaneous diagonalization. The product
//! formula multiplies joint eigenvalue vectors of the two sides with the
//! bilinear dot product; the fiber formula diagonalizes only the left side
//! and takes the union of the spectra of the fiber combinations
//! `Σ_j λ_j^{(p)} B_j`. Both are compared against the Kronecker oracle by
//! the verification harness.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::{commute, is_normal, is_psd, CMatrix, Tolerance};
use crate::op::ElementaryOperator;
use crate::random::{random_matrix, random_normal_matrix, rng_from_seed};
use crate::spectrum::{directed_hausdorff, Provenance, SpectrumSet};

const JOINT_DIAG_RETRIES: usize = 5;
const JOINT_DIAG_DEPTH: usize = 16;

/// Joint spectrum of a commuting normal family: one joint eigenvalue vector
/// `λ^{(p)} ∈ ℂ^J` per common eigenvector, plus the diagonalizing unitary.
#[derive(Debug, Clone)]
pub struct JointSpectrum {
    /// Ambient dimension n.
    pub dim: usize,
    /// Family size J.
    pub family_size: usize,
    /// `vectors[p][j]` is the p-th diagonal entry of the j-th coefficient
    /// after simultaneous diagonalization; sorted lexicographically by
    /// `(Re, Im)` of the first member, then the second, and so on.
    pub vectors: Vec<Vec<Complex64>>,
    /// Unitary with `U* A_j U` diagonal for every j.
    pub unitary: CMatrix,
}

/// Simultaneously diagonalize a family of pairwise commuting normal
/// matrices.
///
/// A random Hermitian combination `Σ_j c_j Re(A_j) + c'_j Im(A_j)` is
/// diagonalized, degenerate eigenspaces are refined recursively with fresh
/// combinations, and the whole attempt is retried with new coefficients up
/// to five times. The combination coefficients come from a fixed internal
/// stream, so the result is deterministic in the input.
pub fn joint_diagonalize(family: &[CMatrix], tol: Tolerance) -> Result<JointSpectrum> {
    if family.is_empty() {
        return Err(Error::Dimension("joint_diagonalize: empty family".into()));
    }
    let n = family[0].rows();
    for (j, a) in family.iter().enumerate() {
        if !a.is_square() || a.rows() != n {
            return Err(Error::Dimension(format!(
                "joint_diagonalize: member {j} is {}x{}, expected {n}x{n}",
                a.rows(),
                a.cols()
            )));
        }
        let chk = is_normal(a, tol)?;
        if !chk.ok {
            return Err(Error::Precondition {
                what: format!("joint_diagonalize: member {j} is not normal within tolerance"),
                residual: chk.residual,
            });
        }
    }
    for i in 0..family.len() {
        for j in i + 1..family.len() {
            let chk = commute(&family[i], &family[j], tol)?;
            if !chk.ok {
                return Err(Error::Precondition {
                    what: format!("joint_diagonalize: members {i} and {j} do not commute within tolerance"),
                    residual: chk.residual,
                });
            }
        }
    }

    let scales: Vec<f64> = family.iter().map(|a| a.op_norm()).collect();
    let mut best_residual = f64::INFINITY;
    for attempt in 0..JOINT_DIAG_RETRIES {
        let mut rng = rng_from_seed(0xD1A6 ^ (attempt as u64))  ;
        let u = diagonalize_subspace(family, &CMatrix::identity(n), &mut rng, JOINT_DIAG_DEPTH);
        // verify: off-diagonal residual of every conjugated member
        let mut worst = 0.0f64;
        for (a, scale) in family.iter().zip(&scales) {
            let conj = &(&u.adjoint() * a) * &u;
            let off = linalg::offdiag_norm(&conj);
            let rel = if *scale > 0.0 { off / scale } else { off };
            worst = worst.max(rel);
        }
        best_residual = best_residual.min(worst);
        let limit = 10.0 * (tol.abs.max(tol.rel)).max(1e-14);
        if worst <= limit {
            return Ok(build_joint_spectrum(family, u));
        }
    }
    Err(Error::Convergence {
        what: format!(
            "joint_diagonalize: residual {best_residual:.3e} after {JOINT_DIAG_RETRIES} random combinations"
        ),
        iterations: JOINT_DIAG_RETRIES,
    })
}

/// Diagonalize the family restricted to the column span of `basis`
/// (n×k isometry), returning an n×k isometry whose columns are joint
/// eigenvectors as far as this pass can resolve them.
fn diagonalize_subspace(
    family: &[CMatrix],
    basis: &CMatrix,
    rng: &mut impl rand::Rng,
    depth: usize,
) -> CMatrix {
    let k = basis.cols();
    if k <= 1 || depth == 0 {
        return basis.clone();
    }
    // restricted family members
    let ba = basis.adjoint();
    let restricted: Vec<CMatrix> =
        family.iter().map(|a| &(&ba * a) * basis).collect();
    if restricted.iter().all(|m| linalg::offdiag_norm(m) <= 1e-13 * m.op_norm().max(1.0)) {
        return basis.clone();
    }

    let mut combo = CMatrix::zeros(k, k);
    for m in &restricted {
        let scale = m.op_norm().max(1e-300);
        let c1 = rng.random::<f64>() * 2.0 - 1.0;
        let c2 = rng.random::<f64>() * 2.0 - 1.0;
        combo = &combo + &m.hermitian_part().scale(Complex64::new(c1 / scale, 0.0));
        combo = &combo + &m.skew_part().scale(Complex64::new(c2 / scale, 0.0));
    }
    let (evals, v) = match linalg::herm_eig(&combo) {
        Ok(r) => r,
        Err(_) => return basis.clone(),
    };
    let spread = evals.last().copied().unwrap_or(0.0) - evals.first().copied().unwrap_or(0.0);
    let gap_tol = 1e-10 * spread.max(1e-300);

    // cluster eigenvalues of the combination and refine each cluster
    let mut out = basis.matmul(&v).expect("conformable");
    let mut start = 0usize;
    while start < k {
        let mut end = start + 1;
        while end < k && (evals[end] - evals[end - 1]).abs() <= gap_tol {
            end += 1;
        }
        if end - start > 1 && end - start < k {
            let sub_basis = CMatrix::from_fn(basis.rows(), end - start, |i, j| out[(i, start + j)]);
            let refined = diagonalize_subspace(family, &sub_basis, rng, depth - 1);
            for j in 0..end - start {
                for i in 0..basis.rows() {
                    out[(i, start + j)] = refined[(i, j)];
                }
            }
        } else if end - start == k {
            // the combination failed to split anything; give up on this pass
            return out;
        }
        start = end;
    }
    out
}

fn build_joint_spectrum(family: &[CMatrix], u: CMatrix) -> JointSpectrum {
    let n = u.rows();
    let ua = u.adjoint();
    let diags: Vec<Vec<Complex64>> = family
        .iter()
        .map(|a| {
            let conj = &(&ua * a) * &u;
            (0..n).map(|p| conj[(p, p)]).collect()
        })
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&p, &q| {
        for d in &diags {
            let c = d[p].re.total_cmp(&d[q].re).then(d[p].im.total_cmp(&d[q].im));
            if c != std::cmp::Ordering::Equal {
                return c;
            }
        }
        std::cmp::Ordering::Equal
    });
    let vectors: Vec<Vec<Complex64>> =
        order.iter().map(|&p| diags.iter().map(|d| d[p]).collect()).collect();
    let unitary = CMatrix::from_fn(n, n, |i, j| u[(i, order[j])]);
    JointSpectrum { dim: n, family_size: family.len(), vectors, unitary }
}

/// Product-formula spectrum `{ λ^{(p)} · μ^{(q)} }` with the bilinear dot
/// product `λ·μ = Σ_j λ_j μ_j` (no conjugation); a multiset of size
/// `n_A · n_B`.
pub fn product_spectrum(js_a: &JointSpectrum, js_b: &JointSpectrum, tol: Tolerance) -> Result<SpectrumSet> {
    if js_a.family_size != js_b.family_size {
        return Err(Error::Dimension(format!(
            "product_spectrum: family sizes differ ({} vs {})",
            js_a.family_size, js_b.family_size
        )));
    }
    let mut values = Vec::with_capacity(js_a.dim * js_b.dim);
    for lam in &js_a.vectors {
        for mu in &js_b.vectors {
            let dot: Complex64 = lam.iter().zip(mu).map(|(l, m)| l * m).sum();
            values.push(dot);
        }
    }
    Ok(SpectrumSet::new(values, tol, Provenance::Formula))
}

/// Fiber-formula spectrum: the left family is simultaneously diagonalized
/// and the union `⋃_p eig(Σ_j λ_j^{(p)} B_j)` is returned as a multiset of
/// size `m·n`.
pub fn fiber_spectrum(op: &ElementaryOperator, tol: Tolerance) -> Result<SpectrumSet> {
    let js = joint_diagonalize(&op.family().left_family(), tol)?;
    let n = op.right_dim();
    let mut values = Vec::with_capacity(js.dim * n);
    for lam in &js.vectors {
        let mut fiber = CMatrix::zeros(n, n);
        for (coeff, (_, b)) in lam.iter().zip(op.family().terms()) {
            fiber = &fiber + &b.scale(*coeff);
        }
        values.extend(linalg::eig_values(&fiber)?);
    }
    Ok(SpectrumSet::new(values, tol, Provenance::Formula))
}

/// Verdict of a hypothesis-gated theorem check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::NotApplicable => "NOT_APPLICABLE",
        }
    }
}

/// Report of the positivity check for operators with PSD coefficients and a
/// commuting left family.
#[derive(Debug, Clone)]
pub struct LudersReport {
    /// All coefficients PSD and the left family commutes, within `tol`.
    pub hypotheses_met: bool,
    pub spectrum: SpectrumSet,
    pub min_re: f64,
    pub max_abs_im: f64,
    /// `‖K‖`, the scale the spectral bounds are judged against.
    pub k_norm: f64,
    pub verdict: Verdict,
}

/// Check the positivity prediction: PSD coefficients with a commuting left
/// family force the spectrum into `[0, ∞)`. Hypotheses are evaluated, not
/// assumed; when they fail the verdict is `NotApplicable`.
pub fn luders_check(op: &ElementaryOperator, tol: Tolerance) -> Result<LudersReport> {
    let mut hypotheses_met = true;
    for (j, (a, b)) in op.family().terms().iter().enumerate() {
        let _ = j;
        if !is_psd(a, tol)?.ok || !is_psd(b, tol)?.ok {
            hypotheses_met = false;
            break;
        }
    }
    if hypotheses_met {
        hypotheses_met = op.left_family_commutes(tol)?.is_ok();
    }

    let spectrum = op.spectrum_tol(tol)?;
    let k_norm = op.kron_matrix()?.op_norm();
    let min_re = spectrum.min_re();
    let max_abs_im = spectrum.max_abs_im();
    let verdict = if !hypotheses_met {
        Verdict::NotApplicable
    } else {
        let thresh = tol.threshold(k_norm.max(1.0));
        if min_re >= -thresh && max_abs_im <= thresh {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    };
    Ok(LudersReport { hypotheses_met, spectrum, min_re, max_abs_im, k_norm, verdict })
}

/// A triple `(T, N, Ψ)` with `Ψ N = T Ψ` exactly: `N` normal k×k, `T`
/// block upper triangular `[[N, R],[0, M]]` q×q, and `Ψ` the
/// first-k-columns embedding.
#[derive(Debug, Clone)]
pub struct IntertwinedInstance {
    pub t: CMatrix,
    pub n: CMatrix,
    pub psi: CMatrix,
    pub seed: u64,
}

/// Build a random intertwined instance of the given sizes.
pub fn make_intertwined_instance(k: usize, q: usize, seed: u64) -> Result<IntertwinedInstance> {
    if k > q {
        return Err(Error::Dimension(format!("make_intertwined_instance: k = {k} exceeds q = {q}")));
    }
    if k == 0 {
        return Err(Error::Dimension("make_intertwined_instance: k must be positive".into()));
    }
    let mut rng = rng_from_seed(seed);
    let n = random_normal_matrix(k, 1.0, &mut rng);
    let r = random_matrix(k, q - k, &mut rng);
    let m = random_matrix(q - k, q - k, &mut rng);
    let mut t = CMatrix::zeros(q, q);
    for i in 0..k {
        for j in 0..k {
            t[(i, j)] = n[(i, j)];
        }
        for j in 0..q - k {
            t[(i, k + j)] = r[(i, j)];
        }
    }
    for i in 0..q - k {
        for j in 0..q - k {
            t[(k + i, k + j)] = m[(i, j)];
        }
    }
    let psi = CMatrix::from_fn(q, k, |i, j| {
        if i == j { Complex64::ONE } else { Complex64::ZERO }
    });
    Ok(IntertwinedInstance { t, n, psi, seed })
}

/// Does every eigenvalue of `N` lie within `tol` (absolute) of some
/// eigenvalue of `T`? Returns the witnessing directed distance as well.
pub fn check_inclusion(inst: &IntertwinedInstance, tol: f64) -> Result<(bool, f64)> {
    let eig_n = linalg::eig_values(&inst.n)?;
    let eig_t = linalg::eig_values(&inst.t)?;
    let d = directed_hausdorff(&eig_n, &eig_t);
    Ok((d <= tol, d))
}

/// Self-consistency of the spectrum across the two assembly routes: the
/// matrix of `Δ` rebuilt column-by-column through `apply` on matrix units
/// must have the same eigenvalue multiset as the cached Kronecker
/// realization, within `tol` in Hausdorff distance.
pub fn eigenvalue_membership(op: &ElementaryOperator, tol: f64) -> Result<(bool, f64)> {
    let m = op.left_dim();
    let n = op.right_dim();
    let mn = m * n;
    let mut by_apply = CMatrix::zeros(mn, mn);
    for col in 0..mn {
        // matrix unit E_{ij} with vec index col = j*m + i
        let (i, j) = (col % m, col / m);
        let mut unit = CMatrix::zeros(m, n);
        unit[(i, j)] = Complex64::ONE;
        let image = op.apply(&unit)?.vec_cols();
        for (row, v) in image.into_iter().enumerate() {
            by_apply[(row, col)] = v;
        }
    }
    let e1 = linalg::eig_values(&by_apply)?;
    let e2 = linalg::eig_values(op.kron_matrix()?)?;
    let d = crate::spectrum::hausdorff(&e1, &e2);
    Ok((d <= tol, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{commuting_normal_family, random_unitary, rng_from_seed};

    fn r(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn already_diagonal_family() {
        let fam =
            vec![CMatrix::diag(&[r(3.0), r(1.0)]), CMatrix::diag(&[Complex64::new(0.0, 1.0), r(2.0)])];
        let js = joint_diagonalize(&fam, Tolerance::default()).unwrap();
        assert_eq!(js.dim, 2);
        // sorted by first member: (1.0, ...) then (3.0, ...)
        assert!((js.vectors[0][0] - r(1.0)).norm() < 1e-12);
        assert!((js.vectors[1][0] - r(3.0)).norm() < 1e-12);
        // unitary is a permutation-with-phases
        for j in 0..2 {
            let col_mods: Vec<f64> = (0..2).map(|i| js.unitary[(i, j)].norm()).collect();
            let big = col_mods.iter().filter(|&&x| x > 0.9).count();
            assert_eq!(big, 1);
        }
    }

    #[test]
    fn single_hermitian_matrix() {
        let h = CMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap();
        let js = joint_diagonalize(std::slice::from_ref(&h), Tolerance::default()).unwrap();
        assert!((js.vectors[0][0] - r(-1.0)).norm() < 1e-12);
        assert!((js.vectors[1][0] - r(1.0)).norm() < 1e-12);
    }

    #[test]
    fn planted_family_is_recovered() {
        let mut rng = rng_from_seed(101);
        for n in [3usize, 5] {
            let u0 = random_unitary(n, &mut rng);
            let planted: Vec<Vec<Complex64>> = (0..3)
                .map(|_| (0..n).map(|_| crate::random::unit_disc_c64(&mut rng)).collect())
                .collect();
            let fam: Vec<CMatrix> = planted
                .iter()
                .map(|d| &(&u0 * &CMatrix::diag(d)) * &u0.adjoint())
                .collect();
            let js = joint_diagonalize(&fam, Tolerance::default()).unwrap();
            // recovered joint vectors match planted diagonals up to joint permutation
            for p in 0..n {
                let found = (0..n).any(|q| {
                    (0..3).all(|j| (js.vectors[q][j] - planted[j][p]).norm() <= 1e-9)
                });
                assert!(found, "planted joint eigenvalue {p} not recovered (n={n})");
            }
        }
    }

    #[test]
    fn degenerate_joint_eigenvalues_are_fine() {
        // identical diagonal blocks force a 2-dimensional joint eigenspace
        let d1 = CMatrix::diag(&[r(1.0), r(1.0), r(2.0)]);
        let d2 = CMatrix::diag(&[r(5.0), r(5.0), r(-1.0)]);
        let mut rng = rng_from_seed(55);
        let u = random_unitary(3, &mut rng);
        let fam = vec![&(&u * &d1) * &u.adjoint(), &(&u * &d2) * &u.adjoint()];
        let js = joint_diagonalize(&fam, Tolerance::default()).unwrap();
        assert!((js.vectors[0][0] - r(1.0)).norm() < 1e-9);
        assert!((js.vectors[1][0] - r(1.0)).norm() < 1e-9);
        assert!((js.vectors[2][0] - r(2.0)).norm() < 1e-9);
    }

    #[test]
    fn rejects_non_commuting_input() {
        let a = CMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, -1.0]).unwrap();
        let b = CMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap();
        match joint_diagonalize(&[a, b], Tolerance::default()) {
            Err(Error::Precondition { what, .. }) => assert!(what.contains("commute")),
            other => panic!("expected precondition error, got {other:?}"),
        }
    }

    #[test]
    fn product_spectrum_scalar_case() {
        let tol = Tolerance::default();
        let js_a = JointSpectrum {
            dim: 2,
            family_size: 1,
            vectors: vec![vec![r(1.0)], vec![r(2.0)]],
            unitary: CMatrix::identity(2),
        };
        let js_b = JointSpectrum {
            dim: 2,
            family_size: 1,
            vectors: vec![vec![r(3.0)], vec![r(4.0)]],
            unitary: CMatrix::identity(2),
        };
        let s = product_spectrum(&js_a, &js_b, tol).unwrap();
        let want = vec![r(3.0), r(4.0), r(6.0), r(8.0)];
        assert!(crate::spectrum::matching_distance(&s.values, &want) < 1e-14);
    }

    #[test]
    fn product_spectrum_projection_pairs() {
        let tol = Tolerance::default();
        let js = JointSpectrum {
            dim: 2,
            family_size: 2,
            vectors: vec![vec![r(1.0), r(0.0)], vec![r(0.0), r(1.0)]],
            unitary: CMatrix::identity(2),
        };
        let s = product_spectrum(&js, &js, tol).unwrap();
        let want = vec![r(1.0), r(0.0), r(0.0), r(1.0)];
        assert!(crate::spectrum::matching_distance(&s.values, &want) < 1e-14);

        let js_wrong = JointSpectrum {
            dim: 2,
            family_size: 1,
            vectors: vec![vec![r(1.0)], vec![r(0.0)]],
            unitary: CMatrix::identity(2),
        };
        assert!(product_spectrum(&js, &js_wrong, tol).is_err());
    }

    #[test]
    fn product_formula_matches_oracle() {
        let mut rng = rng_from_seed(7);
        let tol = Tolerance::default();
        for _ in 0..5 {
            let lefts = commuting_normal_family(3, 2, 1.0, &mut rng);
            let rights = commuting_normal_family(4, 2, 1.0, &mut rng);
            let terms: Vec<_> = lefts.iter().cloned().zip(rights.iter().cloned()).collect();
            let op = ElementaryOperator::from_terms(terms).unwrap();
            let js_a = joint_diagonalize(&lefts, tol).unwrap();
            let js_b = joint_diagonalize(&rights, tol).unwrap();
            let formula = product_spectrum(&js_a, &js_b, tol).unwrap();
            let oracle = op.spectrum().unwrap();
            let d = formula.hausdorff_distance(&oracle);
            let scale = op.kron_matrix().unwrap().op_norm().max(1.0);
            assert!(d <= 1e-8 * scale, "d_H = {d:e}");
        }
    }

    #[test]
    fn fiber_formula_scalar_fibers() {
        // J=1, A=diag(1,2): spectrum = eig(B) ∪ eig(2B)
        let mut rng = rng_from_seed(21);
        let b = random_matrix(2, 2, &mut rng);
        let a = CMatrix::diag(&[r(1.0), r(2.0)]);
        let op = ElementaryOperator::from_terms(vec![(a, b.clone())]).unwrap();
        let s = fiber_spectrum(&op, Tolerance::default()).unwrap();
        let mut want = linalg::eig_values(&b).unwrap();
        want.extend(linalg::eig_values(&b.scale(r(2.0))).unwrap());
        assert!(crate::spectrum::matching_distance(&s.values, &want) < 1e-10);
    }

    #[test]
    fn fiber_formula_projection_selection() {
        // left projections diag(1,0), diag(0,1) select eig(B₁) ∪ eig(B₂)
        let mut rng = rng_from_seed(22);
        let b1 = random_matrix(3, 3, &mut rng);
        let b2 = random_matrix(3, 3, &mut rng);
        let p1 = CMatrix::diag(&[r(1.0), r(0.0)]);
        let p2 = CMatrix::diag(&[r(0.0), r(1.0)]);
        let op = ElementaryOperator::from_terms(vec![(p1, b1.clone()), (p2, b2.clone())]).unwrap();
        let s = fiber_spectrum(&op, Tolerance::default()).unwrap();
        let mut want = linalg::eig_values(&b1).unwrap();
        want.extend(linalg::eig_values(&b2).unwrap());
        assert!(crate::spectrum::matching_distance(&s.values, &want) < 1e-9);
    }

    #[test]
    fn fiber_formula_matches_oracle_with_arbitrary_right() {
        let mut rng = rng_from_seed(8);
        let tol = Tolerance::default();
        for _ in 0..5 {
            let lefts = commuting_normal_family(3, 3, 1.0, &mut rng);
            let terms: Vec<_> =
                lefts.into_iter().map(|a| (a, random_matrix(3, 3, &mut rng))).collect();
            let op = ElementaryOperator::from_terms(terms).unwrap();
            let formula = fiber_spectrum(&op, tol).unwrap();
            let oracle = op.spectrum().unwrap();
            let d = formula.hausdorff_distance(&oracle);
            let scale = op.kron_matrix().unwrap().op_norm().max(1.0);
            assert!(d <= 1e-8 * scale, "d_H = {d:e}");
        }
    }

    #[test]
    fn luders_check_projection_family_passes() {
        let p1 = CMatrix::diag(&[r(1.0), r(0.0)]);
        let p2 = CMatrix::diag(&[r(0.0), r(1.0)]);
        let op = ElementaryOperator::new(
            crate::op::CoefficientFamily::luders(vec![p1, p2]).unwrap(),
        );
        let rep = luders_check(&op, Tolerance::default()).unwrap();
        assert!(rep.hypotheses_met);
        assert_eq!(rep.verdict, Verdict::Pass);
        let want = vec![r(1.0), r(0.0), r(0.0), r(1.0)];
        assert!(crate::spectrum::matching_distance(&rep.spectrum.values, &want) < 1e-12);
    }

    #[test]
    fn luders_check_gates_on_hypotheses() {
        // non-commuting left family: NOT_APPLICABLE regardless of spectrum
        let a1 = CMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, 0.0]).unwrap();
        let a2 = CMatrix::from_real(2, 2, &[0.5, 0.5, 0.5, 0.5]).unwrap();
        let op = ElementaryOperator::new(
            crate::op::CoefficientFamily::luders(vec![a1, a2]).unwrap(),
        );
        let rep = luders_check(&op, Tolerance::default()).unwrap();
        assert!(!rep.hypotheses_met);
        assert_eq!(rep.verdict, Verdict::NotApplicable);
    }

    #[test]
    fn doubled_block_instance_has_doubled_spectrum() {
        // T = [[N, 0],[0, N]]: eig(T) is eig(N) with doubled multiplicity
        let mut rng = rng_from_seed(404);
        let k = 3;
        let n = random_normal_matrix(k, 1.0, &mut rng);
        let mut t = CMatrix::zeros(2 * k, 2 * k);
        for i in 0..k {
            for j in 0..k {
                t[(i, j)] = n[(i, j)];
                t[(k + i, k + j)] = n[(i, j)];
            }
        }
        let psi = CMatrix::from_fn(2 * k, k, |i, j| {
            if i == j { Complex64::ONE } else { Complex64::ZERO }
        });
        let inst = IntertwinedInstance { t, n: n.clone(), psi, seed: 404 };
        let (ok, _) = check_inclusion(&inst, 1e-9).unwrap();
        assert!(ok);
        let mut doubled = linalg::eig_values(&n).unwrap();
        doubled.extend(linalg::eig_values(&n).unwrap());
        let eig_t = linalg::eig_values(&inst.t).unwrap();
        assert!(crate::spectrum::matching_distance(&doubled, &eig_t) <= 1e-9);
    }

    #[test]
    fn intertwined_instances_include_spectra() {
        for (idx, (k, q)) in [(1usize, 3usize), (2, 4), (3, 8), (4, 4)].iter().enumerate() {
            let inst = make_intertwined_instance(*k, *q, 1000 + idx as u64).unwrap();
            // ΨN = TΨ exactly
            let lhs = inst.psi.matmul(&inst.n).unwrap();
            let rhs = inst.t.matmul(&inst.psi).unwrap();
            assert_eq!(lhs, rhs);
            let (ok, d) = check_inclusion(&inst, 1e-8).unwrap();
            assert!(ok, "directed distance {d:e}");
        }
        assert!(make_intertwined_instance(5, 3, 0).is_err());
    }

    #[test]
    fn membership_via_dual_assembly() {
        let mut rng = rng_from_seed(77);
        let terms: Vec<_> =
            (0..3).map(|_| (random_matrix(3, 3, &mut rng), random_matrix(2, 2, &mut rng))).collect();
        let op = ElementaryOperator::from_terms(terms).unwrap();
        let (ok, d) = eigenvalue_membership(&op, 1e-9 * op.kron_matrix().unwrap().op_norm().max(1.0))
            .unwrap();
        assert!(ok, "dual-assembly Hausdorff {d:e}");

        let id = ElementaryOperator::identity_map(2, 2);
        let (ok, _) = eigenvalue_membership(&id, 1e-12).unwrap();
        assert!(ok);
    }
}
