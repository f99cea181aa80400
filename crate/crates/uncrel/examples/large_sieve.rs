//! Sweeps the large-sieve bound over the window length lambda and compares
//! it with the exact functional, then spot-checks the underlying inequality
//! on a random trigonometric polynomial.
//!
//! Run with: cargo run --example large_sieve

use uncrel::bounds::{delta, nyquist_density, sieve_bound};
use uncrel::experiments::{picket_fence, sieve_empirical, DiscreteMeasure, TrigPolynomial};
use uncrel::linalg::{dft_matrix, ComplexVector, IndexSet};
use uncrel::random::{complex_gaussian, rng_from};

fn main() {
    let m = 64usize;
    let n = 8usize;
    let f = dft_matrix(m).unwrap();
    let p = picket_fence(m, n).unwrap();
    let q = IndexSet::circular_interval(m, 0, n).unwrap();
    let exact = delta(&f, &p, &q).unwrap();
    println!("picket fence m = {m}, n = {n}: exact delta = {exact:.6}\n");

    println!("{:>8} {:>10} {:>12} {:>10}", "lambda", "rho", "bound", "ratio");
    for lambda in [1.0, 2.0, 4.0, m as f64 / n as f64, 16.0, 32.0, m as f64] {
        let rho = nyquist_density(&p, lambda).unwrap();
        let (bound, _) = sieve_bound(m, &p, n, Some(lambda)).unwrap();
        println!(
            "{lambda:>8.2} {rho:>10.4} {bound:>12.6} {:>10.4}",
            bound / exact
        );
    }
    let (best, best_lambda) = sieve_bound(m, &p, n, None).unwrap();
    println!(
        "\ngrid minimum: bound {best:.6} at lambda = {best_lambda}, ratio {:.4} (tight up to sqrt(2))",
        best / exact
    );

    // The inequality behind the bound, on a random instance.
    let mut rng = rng_from(1);
    let mu = DiscreteMeasure::from_index_set(&p);
    let coeffs = ComplexVector::from_entries((0..n).map(|_| complex_gaussian(&mut rng)).collect());
    let psi = TrigPolynomial::new(coeffs, 0.25).unwrap();
    let (lhs, rhs) = sieve_empirical(&mu, &psi, 1.0 / n as f64).unwrap();
    println!("\nempirical inequality on the picket measure: {lhs:.6} <= {rhs:.6}");
}
