//! The separation counterexample at the recovery threshold: for m = 16 the
//! planted signal has sparsity sqrt(m)/2, exactly at the edge, and a second
//! pair explains the same observation with identical l0 and l1 norms, so
//! neither program can prefer the planted one.
//!
//! Run with: cargo run --example counterexample

use uncrel::experiments::counterexample;
use uncrel::recovery::{separate_p0, separate_p1, separation_threshold, SolverConfig};

fn main() {
    let rep = counterexample(16).unwrap();
    println!("m = {}", rep.m);
    println!("planted    ||y||_0 = {}, ||y||_1 = {}", rep.l0_pair.0, rep.l1_pair.0);
    println!("alternative||y||_0 = {}, ||y||_1 = {}", rep.l0_pair.1, rep.l1_pair.1);
    println!("both pairs reproduce w: {}\n", rep.both_feasible);

    let problem = rep.problem().unwrap();
    let (holds, lhs, rhs) =
        separation_threshold(&problem.a, &problem.b, problem.sparsity_s, problem.b.cols())
            .unwrap();
    println!("threshold 2sq < f(2s,q): {lhs} < {rhs} -> {holds} (saturated, as designed)");

    let p1 = separate_p1(&problem, &SolverConfig::strict()).unwrap();
    println!(
        "(P1) objective = {:.8} (= the shared l1 norm; the argmin is not unique)",
        p1.objective
    );

    let p0 = separate_p0(&problem, 2, &SolverConfig::default()).unwrap();
    let support: Vec<usize> = (0..p0.y.dim())
        .filter(|&i| p0.y.get(i).norm() > 1e-8)
        .map(|i| i + 1)
        .collect();
    println!(
        "(P0) finds a support-{} solution at {:?}; the alternative pair shows it is not unique",
        p0.objective, support
    );
}
