//! Finite eigenvalue multisets: Hausdorff distance, optimal multiset
//! matching, and the reality/positivity queries used by the theorem checks.

use num_complex::Complex64;

use crate::matrix::Tolerance;

/// How a spectrum was obtained: by eigensolving a Kronecker realization
/// (the oracle) or by one of the closed-form theorem formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Oracle,
    Formula,
}

impl Provenance {
    pub fn as_str(&self) -> &'static str {
        match self {
            Provenance::Oracle => "oracle",
            Provenance::Formula => "formula",
        }
    }
}

/// Finite multiset of complex eigenvalues with tolerance metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumSet {
    pub values: Vec<Complex64>,
    pub tol: Tolerance,
    pub provenance: Provenance,
}

impl SpectrumSet {
    pub fn new(values: Vec<Complex64>, tol: Tolerance, provenance: Provenance) -> Self {
        SpectrumSet { values, tol, provenance }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Magnitude scale of the multiset: `max |λ|`, zero when empty.
    pub fn scale(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_im(&self) -> f64 {
        self.values.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    pub fn min_re(&self) -> f64 {
        self.values.iter().map(|z| z.re).fold(f64::INFINITY, f64::min)
    }

    /// All imaginary parts negligible at the set's own scale.
    pub fn is_real(&self) -> bool {
        self.max_abs_im() <= self.tol.threshold(self.scale())
    }

    /// Real and contained in `[0, ∞)` up to tolerance.
    pub fn is_nonneg(&self) -> bool {
        self.is_real() && (self.is_empty() || self.min_re() >= -self.tol.threshold(self.scale()))
    }

    /// Is `z` within `dist` of some member?
    pub fn contains_within(&self, z: Complex64, dist: f64) -> bool {
        self.values.iter().any(|v| (v - z).norm() <= dist)
    }

    /// Symmetric Hausdorff distance to another multiset.
    pub fn hausdorff_distance(&self, other: &SpectrumSet) -> f64 {
        hausdorff(&self.values, &other.values)
    }

    /// Bottleneck matching distance: the smallest `d` admitting a perfect
    /// matching between the multisets with every pair within `d`. Infinite
    /// when the sizes differ.
    pub fn matching_distance(&self, other: &SpectrumSet) -> f64 {
        matching_distance(&self.values, &other.values)
    }

    /// Values sorted lexicographically by `(Re, Im)`, for stable output.
    pub fn sorted_values(&self) -> Vec<Complex64> {
        let mut v = self.values.clone();
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        v
    }
}

/// Symmetric Hausdorff distance between two finite point sets.
/// Zero when both are empty, infinite when exactly one is.
pub fn hausdorff(a: &[Complex64], b: &[Complex64]) -> f64 {
    match (a.is_empty(), b.is_empty()) {
        (true, true) => return 0.0,
        (true, false) | (false, true) => return f64::INFINITY,
        _ => {}
    }
    directed_hausdorff(a, b).max(directed_hausdorff(b, a))
}

/// Directed Hausdorff distance: `max_{x ∈ a} min_{y ∈ b} |x - y|`.
pub fn directed_hausdorff(a: &[Complex64], b: &[Complex64]) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    if b.is_empty() {
        return f64::INFINITY;
    }
    a.iter()
        .map(|x| b.iter().map(|y| (x - y).norm()).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max)
}

/// Bottleneck matching distance between equal-size multisets: binary search
/// over candidate radii with bipartite matching feasibility (Kuhn's
/// augmenting paths) at each step.
pub fn matching_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let n = a.len();
    if n == 0 {
        return 0.0;
    }
    let mut dists: Vec<f64> = Vec::with_capacity(n * n);
    for x in a {
        for y in b {
            dists.push((x - y).norm());
        }
    }
    let mut cands = dists.clone();
    cands.sort_by(f64::total_cmp);
    cands.dedup();

    let feasible = |radius: f64| -> bool {
        // adjacency: a[i] may match b[j] iff dist <= radius
        let mut match_of_b = vec![usize::MAX; n];
        let mut matched = 0usize;
        for i in 0..n {
            let mut visited = vec![false; n];
            if augment(i, radius, &dists, n, &mut visited, &mut match_of_b) {
                matched += 1;
            }
        }
        matched == n
    };

    let mut lo = 0usize;
    let mut hi = cands.len() - 1;
    if !feasible(cands[hi]) {
        return f64::INFINITY;
    }
    if feasible(cands[lo]) {
        return cands[lo];
    }
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if feasible(cands[mid]) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    cands[hi]
}

fn augment(
    i: usize,
    radius: f64,
    dists: &[f64],
    n: usize,
    visited: &mut [bool],
    match_of_b: &mut [usize],
) -> bool {
    for j in 0..n {
        if !visited[j] && dists[i * n + j] <= radius {
            visited[j] = true;
            if match_of_b[j] == usize::MAX
                || augment(match_of_b[j], radius, dists, n, visited, match_of_b)
            {
                match_of_b[j] = i;
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn hausdorff_basics() {
        let a = [c(0.0, 0.0), c(1.0, 0.0)];
        let b = [c(0.0, 0.1), c(1.0, 0.0)];
        assert!((hausdorff(&a, &b) - 0.1).abs() < 1e-15);
        assert_eq!(hausdorff(&[], &[]), 0.0);
        assert_eq!(hausdorff(&a, &[]), f64::INFINITY);
    }

    #[test]
    fn matching_detects_multiplicity() {
        // Hausdorff is blind to multiplicities, the matching distance is not.
        let a = [c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)];
        let b = [c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)];
        assert!(hausdorff(&a, &b) < 1e-15);
        assert!((matching_distance(&a, &b) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn matching_handles_permutations() {
        let a = [c(1.0, 2.0), c(3.0, -1.0), c(0.5, 0.0)];
        let b = [c(0.5, 0.0), c(1.0, 2.0), c(3.0, -1.0)];
        assert_eq!(matching_distance(&a, &b), 0.0);
        assert_eq!(matching_distance(&a, &b[..2]), f64::INFINITY);
    }

    #[test]
    fn reality_queries() {
        let tol = Tolerance::default();
        let s = SpectrumSet::new(vec![c(1.0, 1e-12), c(2.0, 0.0)], tol, Provenance::Oracle);
        assert!(s.is_real());
        assert!(s.is_nonneg());
        let t = SpectrumSet::new(vec![c(-1.0, 0.0)], tol, Provenance::Oracle);
        assert!(t.is_real());
        assert!(!t.is_nonneg());
        let u = SpectrumSet::new(vec![c(1.0, 0.5)], tol, Provenance::Oracle);
        assert!(!u.is_real());
    }

    #[test]
    fn sorted_values_are_lexicographic() {
        let s = SpectrumSet::new(
            vec![c(1.0, 1.0), c(0.0, 2.0), c(1.0, -1.0)],
            Tolerance::default(),
            Provenance::Formula,
        );
        let v = s.sorted_values();
        assert_eq!(v, vec![c(0.0, 2.0), c(1.0, -1.0), c(1.0, 1.0)]);
    }
}
