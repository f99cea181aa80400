//! Seeded sampling helpers. All randomness in the crate flows from a single
//! root seed through named sub-streams, and Monte Carlo trials derive one
//! stream per trial index so results do not depend on how trials are
//! scheduled.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::{factor, ComplexMatrix, ComplexVector, IndexSet};

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn fnv1a(label: &str) -> u64 {
    let mut hash = 0xCBF2_9CE4_8422_2325u64;
    for b in label.as_bytes() {
        hash ^= u64::from(*b);
        hash = hash.wrapping_mul(0x0000_0100_0000_01B3);
    }
    hash
}

/// Seed of the named sub-stream of `root`.
pub fn substream(root: u64, label: &str) -> u64 {
    splitmix64(root ^ fnv1a(label))
}

/// Seed of trial `index` within a stream.
pub fn trial_seed(stream: u64, index: u64) -> u64 {
    splitmix64(stream ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

pub fn rng_from(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Standard complex Gaussian scalar (independent N(0,1) real and imaginary
/// parts).
pub fn complex_gaussian(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn gaussian_vector(rng: &mut impl Rng, dim: usize) -> ComplexVector {
    ComplexVector::from_entries((0..dim).map(|_| complex_gaussian(rng)).collect())
}

pub fn gaussian_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| complex_gaussian(rng))
}

/// Random unitary matrix from the QR factorization of a complex Gaussian.
pub fn random_unitary(rng: &mut impl Rng, m: usize) -> ComplexMatrix {
    let g = gaussian_matrix(rng, m, m);
    let (q, _) = factor::qr_full(&g);
    q
}

/// Uniformly random subset of `{1,…,m}` with the given size.
pub fn random_subset(rng: &mut impl Rng, m: usize, size: usize) -> IndexSet {
    assert!(size <= m);
    let mut pool: Vec<usize> = (1..=m).collect();
    for i in 0..size {
        let j = rng.random_range(i..m);
        pool.swap(i, j);
    }
    let mut members = pool[..size].to_vec();
    members.sort_unstable();
    IndexSet::new(m, members).expect("sampled members are valid")
}

/// Point uniformly distributed on the complex ball of radius `r` in `C^p`:
/// uniform direction on the real `2p`-sphere and radius `r * U^{1/(2p)}`.
pub fn uniform_complex_ball(rng: &mut impl Rng, p: usize, r: f64) -> ComplexVector {
    loop {
        let dir = gaussian_vector(rng, p);
        let norm = dir.norm2();
        if norm > 1e-12 {
            let u: f64 = rng.random();
            let radius = r * u.powf(1.0 / (2.0 * p as f64));
            return dir.scale(Complex64::new(radius / norm, 0.0));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn substreams_are_stable_and_distinct() {
        assert_eq!(substream(7, "alpha"), substream(7, "alpha"));
        assert_ne!(substream(7, "alpha"), substream(7, "beta"));
        assert_ne!(substream(7, "alpha"), substream(8, "alpha"));
    }

    #[test]
    fn trial_seeds_do_not_collide_nearby() {
        let s = substream(0, "mc");
        let a: Vec<u64> = (0..100).map(|i| trial_seed(s, i)).collect();
        let mut b = a.clone();
        b.sort_unstable();
        b.dedup();
        assert_eq!(a.len(), b.len());
    }

    #[test]
    fn random_unitary_is_unitary() {
        let mut rng = rng_from(42);
        let u = random_unitary(&mut rng, 6);
        assert!(u.unitary_deviation() < 1e-12);
    }

    #[test]
    fn subset_has_requested_size() {
        let mut rng = rng_from(1);
        let s = random_subset(&mut rng, 10, 4);
        assert_eq!(s.len(), 4);
        assert!(s.members().iter().all(|&k| (1..=10).contains(&k)));
    }

    #[test]
    fn ball_samples_stay_inside() {
        let mut rng = rng_from(3);
        for _ in 0..200 {
            let x = uniform_complex_ball(&mut rng, 3, 2.0);
            assert!(x.norm2() <= 2.0 + 1e-12);
        }
    }
}
