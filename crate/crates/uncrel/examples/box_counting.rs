//! Box-counting dimension estimates for sampled sets: a real segment
//! embedded in C reads as dimension ~1, the full unit disk as ~2 (the
//! estimator counts real dimensions).
//!
//! Run with: cargo run --example box_counting

use num_complex::Complex64;
use rand::Rng;
use uncrel::experiments::{box_counting_dim, PointCloud};
use uncrel::linalg::ComplexVector;
use uncrel::random::rng_from;

fn main() {
    let mut rng = rng_from(5);
    let n = 10_000usize;

    let segment: Vec<ComplexVector> = (0..n)
        .map(|_| ComplexVector::from_entries(vec![Complex64::new(rng.random::<f64>(), 0.0)]))
        .collect();
    let grid = [0.1, 0.0562, 0.0316, 0.0178, 0.01];
    let est = box_counting_dim(&PointCloud::new(segment).unwrap(), &grid).unwrap();
    println!("segment [0,1] in C^1:");
    println!("  covering counts {:?}", est.counts);
    println!("  dimension estimate {:.3} (expected ~1)\n", est.estimate);

    let disk: Vec<ComplexVector> = (0..n)
        .map(|_| {
            let r = rng.random::<f64>().sqrt();
            let theta = rng.random::<f64>() * std::f64::consts::TAU;
            ComplexVector::from_entries(vec![Complex64::new(r * theta.cos(), r * theta.sin())])
        })
        .collect();
    let grid = [0.3, 0.21, 0.15, 0.1, 0.07];
    let est = box_counting_dim(&PointCloud::new(disk).unwrap(), &grid).unwrap();
    println!("unit disk in C^1:");
    println!("  covering counts {:?}", est.counts);
    println!("  dimension estimate {:.3} (expected ~2)", est.estimate);
}
