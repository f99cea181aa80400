//! Exact l1 denoising: when the corruption lives on a small set P with
//! Sigma_{P,Q} < 1/2, minimizing ||y - w||_1 over the signal subspace
//! returns the clean signal exactly, however large the corruption is.
//!
//! Run with: cargo run --example logan_denoise

use num_complex::Complex64;
use uncrel::bounds::sigma;
use uncrel::linalg::{dft_matrix, IndexSet};
use uncrel::random::{gaussian_vector, random_subset, rng_from};
use uncrel::recovery::{l1_subspace_denoise, SolverConfig};

fn main() {
    let m = 32usize;
    let f = dft_matrix(m).unwrap();
    let mut rng = rng_from(99);

    let q = IndexSet::circular_interval(m, 4, 3).unwrap();
    let p = random_subset(&mut rng, m, 4); // |P||Q| = 12 < m/2
    let s = sigma(&f, &p, &q).unwrap();
    println!("signal support Q = {:?}", q.members());
    println!("noise support  P = {:?}", p.members());
    println!("Sigma = {s:.4} < 1/2, so exact recovery is certified\n");

    let cols = f.select_columns(&q).unwrap();
    let truth = cols.mul_vec(&gaussian_vector(&mut rng, q.len()));

    for amplitude in [0.1, 1.0, 100.0] {
        let noise = gaussian_vector(&mut rng, m)
            .restrict(&p)
            .scale(Complex64::new(amplitude, 0.0));
        let observed = truth.add(&noise);
        let sol = l1_subspace_denoise(&f, &q, &observed, &SolverConfig::strict()).unwrap();
        println!(
            "noise amplitude {amplitude:>6.1}: recovery error {:.3e} ({} iterations)",
            sol.w.sub(&truth).norm2(),
            sol.iterations
        );
    }
}
