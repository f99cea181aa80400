//! Linear stable recovery: a signal sparse in the DFT basis survives having
//! its picket-fence entries erased and the rest perturbed by noise; the
//! recovery error stays inside the certified constant.
//!
//! Run with: cargo run --example stable_recovery

use num_complex::Complex64;
use uncrel::bounds::delta;
use uncrel::experiments::picket_fence;
use uncrel::linalg::{dft_matrix, IndexSet};
use uncrel::random::{gaussian_vector, rng_from};
use uncrel::recovery::stable_linear_recovery;

fn main() {
    let m = 16usize;
    let n = 4usize;
    let f = dft_matrix(m).unwrap();
    let p = picket_fence(m, n).unwrap();
    let q = IndexSet::circular_interval(m, 0, n).unwrap();
    let d = delta(&f, &p, &q).unwrap();
    println!("erased set P = {:?}", p.members());
    println!("delta = {d:.3}, so C = 1/(1-delta) = {:.3}\n", 1.0 / (1.0 - d));

    let mut rng = rng_from(2024);
    let cols = f.select_columns(&q).unwrap();
    let truth = cols.mul_vec(&gaussian_vector(&mut rng, n));

    for noise_level in [0.0, 0.01, 0.1] {
        let noise = gaussian_vector(&mut rng, m).scale(Complex64::new(noise_level, 0.0));
        let observed = truth.restrict(&p.complement()).add(&noise);
        let (estimate, constant) = stable_linear_recovery(&f, &q, &p, &observed).unwrap();
        let error = estimate.sub(&truth).norm2();
        let allowance = constant * noise.restrict(&p.complement()).norm2();
        println!(
            "noise {noise_level:>5.2}: error {error:.3e} <= C * ||n on P^c|| = {allowance:.3e}"
        );
    }
}
