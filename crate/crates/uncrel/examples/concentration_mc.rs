//! Monte Carlo check of the small-ball bound
//! P[||A u + v|| < delta] <= (p/r^2)^m (delta/||u||)^{2m}
//! for matrices with rows uniform on a complex ball. At p = m = 1 the
//! bound is exactly the hit probability of the unit disk.
//!
//! Run with: cargo run --example concentration_mc

use num_complex::Complex64;
use uncrel::experiments::com_bound_mc;
use uncrel::linalg::ComplexVector;
use uncrel::random::{gaussian_vector, rng_from};

fn main() {
    let trials = 100_000usize;

    let u = ComplexVector::from_entries(vec![Complex64::new(1.0, 0.0)]);
    let v = ComplexVector::zeros(1);
    println!("{:>6} {:>6} {:>8} {:>12} {:>12}", "p", "m", "delta", "empirical", "bound");
    for delta in [0.1, 0.3, 0.5] {
        let (emp, bound) = com_bound_mc(1, 1, 1.0, &u, &v, delta, trials, 7).unwrap();
        println!("{:>6} {:>6} {delta:>8.2} {emp:>12.5} {bound:>12.5}", 1, 1);
    }

    let mut rng = rng_from(11);
    for (p, m) in [(2usize, 2usize), (3, 2), (2, 4)] {
        let u = gaussian_vector(&mut rng, p);
        let v = gaussian_vector(&mut rng, m).scale(Complex64::new(0.05, 0.0));
        let delta = 0.15;
        let (emp, bound) = com_bound_mc(p, m, 1.0, &u, &v, delta, trials, 7).unwrap();
        println!("{p:>6} {m:>6} {delta:>8.2} {emp:>12.5} {bound:>12.5}");
    }
    println!("\nat p = m = 1 the bound equals the exact hit probability, so the");
    println!("estimate hovers around it within sampling error; everywhere else it");
    println!("stays clearly below");
}
