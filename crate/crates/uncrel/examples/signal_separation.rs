//! Declipping as sparse signal separation: clip a Fourier-sparse signal,
//! restrict the interference dictionary to the (observable) clipped
//! locations, check the recovery threshold, and separate with (P1) and
//! (P0).
//!
//! Run with: cargo run --example signal_separation

use num_complex::Complex64;
use uncrel::experiments::{make_clipping_scenario, restrict_to_implied_support};
use uncrel::linalg::{dft_matrix, ComplexVector, Dictionary};
use uncrel::recovery::{separate_p0, separate_p1, separation_threshold, SolverConfig};

fn main() {
    let m = 16usize;
    let a = Dictionary::new(dft_matrix(m).unwrap()).unwrap();

    // Two tones, so the time-domain modulus has genuine peaks; a single tone
    // would be flat and clip everywhere or nowhere.
    let mut y = ComplexVector::zeros(m);
    y.set(5, Complex64::new(1.0, 0.0));
    y.set(12, Complex64::new(0.0, -0.8));

    let s = a.matrix().mul_vec(&y);
    let peak = s.entries().iter().map(|z| z.norm()).fold(0.0, f64::max);
    let clip_level = 0.95 * peak;
    let scenario = make_clipping_scenario(&y, &a, clip_level).unwrap();
    let clipped = scenario.implied_z.norm0(1e-12);
    println!("peak |s| = {peak:.3}, clip level {clip_level:.3}: {clipped} of {m} entries clipped");

    // The clipped locations are observable (|w_i| sits at the level), so the
    // interference dictionary shrinks to those columns and separation
    // becomes well-posed.
    let reduced = restrict_to_implied_support(&scenario).unwrap();
    let problem = &reduced.problem;
    let (holds, lhs, rhs) =
        separation_threshold(&problem.a, &problem.b, problem.sparsity_s, problem.b.cols())
            .unwrap();
    println!(
        "threshold 2sq < f(2s, q) with s = {}, q = {}: {lhs} < {rhs:.1} -> {holds}\n",
        problem.sparsity_s,
        problem.b.cols()
    );

    let p1 = separate_p1(problem, &SolverConfig::strict()).unwrap();
    println!(
        "(P1): error {:.3e}, objective {:.6}, residual {:.2e}",
        p1.y.sub(&y).norm2(),
        p1.objective,
        p1.feasibility_residual
    );
    let p0 = separate_p0(problem, 2, &SolverConfig::default()).unwrap();
    println!(
        "(P0): error {:.3e}, support size {}, {} candidate supports examined",
        p0.y.sub(&y).norm2(),
        p0.objective,
        p0.iterations
    );
}
