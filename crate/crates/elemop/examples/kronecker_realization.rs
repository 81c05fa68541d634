//! Build an elementary operator, realize it as a Kronecker matrix, and
//! check the realization against direct application.
//!
//! ```bash
//! cargo run --example kronecker_realization
//! ```

use elemop::random::{random_matrix, rng_from_seed};
use elemop::{CMatrix, Complex64, ElementaryOperator};

fn main() -> elemop::Result<()> {
    // Δ(X) = A₁ X B₁ + A₂ X B₂ on 2x3 matrices
    let mut rng = rng_from_seed(1);
    let terms = vec![
        (random_matrix(2, 2, &mut rng), random_matrix(3, 3, &mut rng)),
        (random_matrix(2, 2, &mut rng), random_matrix(3, 3, &mut rng)),
    ];
    let op = ElementaryOperator::from_terms(terms)?;

    let k = op.kron_matrix()?;
    println!("operator acts on {}x{} matrices;", op.left_dim(), op.right_dim());
    println!("Kronecker realization is {}x{} with ‖K‖ = {:.6}", k.rows(), k.cols(), k.op_norm());

    // vec(Δ(X)) = K vec(X), column-stacking convention
    let x = random_matrix(2, 3, &mut rng);
    let via_apply = op.apply(&x)?.vec_cols();
    let via_kron = k.matvec(&x.vec_cols())?;
    let err: f64 =
        via_apply.iter().zip(&via_kron).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt();
    println!("‖vec Δ(X) - K vec X‖ = {err:.3e}");

    // the spectrum is the eigenvalue multiset of K
    let spec = op.spectrum()?;
    println!("spectrum ({} eigenvalues):", spec.len());
    for z in spec.sorted_values() {
        println!("  {:+.6} {:+.6}i", z.re, z.im);
    }

    // diagonal coefficients make the spectrum entrywise products
    let a = CMatrix::diag(&[Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0)]);
    let b = CMatrix::diag(&[Complex64::new(3.0, 0.0), Complex64::new(4.0, 0.0)]);
    let diag_op = ElementaryOperator::from_terms(vec![(a, b)])?;
    let spec = diag_op.spectrum()?;
    println!(
        "diag(1,2) ⊗-realized against diag(3,4): spectrum {:?}",
        spec.sorted_values().iter().map(|z| z.re).collect::<Vec<_>>()
    );

    // the formal adjoint's realization is exactly K*
    let adj = op.formal_adjoint();
    let equal = *adj.kron_matrix()? == k.adjoint();
    println!("K(adjoint) == K* entrywise: {equal}");
    Ok(())
}
