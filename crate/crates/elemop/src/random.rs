//! Seeded random generators for matrices and structured families.
//!
//! Everything is driven by `ChaCha8Rng`, so identical seeds give identical
//! streams on every platform. Parallel or per-instance work derives child
//! seeds with [`derive_seed`] instead of sharing one stream.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::matrix::CMatrix;

/// Default seed for reproducible runs.
pub const DEFAULT_SEED: u64 = 0xE1E_05EC;

/// Deterministic RNG from a 64-bit seed.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Child seed for instance `index` of a run seeded with `seed`
/// (splitmix64 finalizer over the pair).
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Standard complex Gaussian: independent N(0,1) real and imaginary parts.
pub fn gaussian_c64(rng: &mut impl Rng) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im)
}

/// Uniform on the closed unit disc; `E|z|^2 = 1/2`.
pub fn unit_disc_c64(rng: &mut impl Rng) -> Complex64 {
    let r = rng.random::<f64>().sqrt();
    let theta = rng.random::<f64>() * std::f64::consts::TAU;
    Complex64::from_polar(r, theta)
}

/// Matrix with iid standard complex Gaussian entries.
pub fn random_matrix(rows: usize, cols: usize, rng: &mut impl Rng) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| gaussian_c64(rng))
}

/// Matrix with iid real standard Gaussian entries.
pub fn random_real_matrix(rows: usize, cols: usize, rng: &mut impl Rng) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| {
        Complex64::new(rng.sample::<f64, _>(StandardNormal), 0.0)
    })
}

/// Haar-like random unitary: QR of a Gaussian matrix with the diagonal of R
/// folded into the phases of Q.
pub fn random_unitary(n: usize, rng: &mut impl Rng) -> CMatrix {
    if n == 0 {
        return CMatrix::zeros(0, 0);
    }
    let g = random_matrix(n, n, rng);
    let (q, r) = crate::linalg::qr_decompose(&g);
    let mut u = q;
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { Complex64::ONE };
        for i in 0..n {
            u[(i, j)] *= phase;
        }
    }
    u
}

/// Random Hermitian matrix `(G + G*)/2`.
pub fn random_hermitian(n: usize, rng: &mut impl Rng) -> CMatrix {
    random_matrix(n, n, rng).hermitian_part()
}

/// Random PSD matrix `C C*`.
pub fn random_psd(n: usize, rng: &mut impl Rng) -> CMatrix {
    let c = random_matrix(n, n, rng);
    c.matmul(&c.adjoint()).expect("square by construction")
}

/// Random normal matrix `U diag(z) U*` with unit-disc diagonal scaled by `radius`.
pub fn random_normal_matrix(n: usize, radius: f64, rng: &mut impl Rng) -> CMatrix {
    let u = random_unitary(n, rng);
    let d = CMatrix::diag(&(0..n).map(|_| unit_disc_c64(rng) * radius).collect::<Vec<_>>());
    &(&u * &d) * &u.adjoint()
}

/// Commuting normal family: a single random eigenbasis `U` shared by `j`
/// members with independent unit-disc diagonals scaled by `radius`.
pub fn commuting_normal_family(n: usize, j: usize, radius: f64, rng: &mut impl Rng) -> Vec<CMatrix> {
    let u = random_unitary(n, rng);
    let ua = u.adjoint();
    (0..j)
        .map(|_| {
            let d = CMatrix::diag(&(0..n).map(|_| unit_disc_c64(rng) * radius).collect::<Vec<_>>());
            &(&u * &d) * &ua
        })
        .collect()
}

/// Commuting PSD family: shared eigenbasis, uniform `[0, radius]` eigenvalues.
pub fn commuting_psd_family(n: usize, j: usize, radius: f64, rng: &mut impl Rng) -> Vec<CMatrix> {
    let u = random_unitary(n, rng);
    let ua = u.adjoint();
    (0..j)
        .map(|_| {
            let d = CMatrix::diag(
                &(0..n)
                    .map(|_| Complex64::new(rng.random::<f64>() * radius, 0.0))
                    .collect::<Vec<_>>(),
            );
            &(&u * &d) * &ua
        })
        .collect()
}
