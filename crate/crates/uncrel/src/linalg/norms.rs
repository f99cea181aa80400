//! Operator and entrywise matrix norms.

use num_complex::Complex64;

use super::ComplexMatrix;

/// Operator 2-norm (largest singular value), computed by power iteration on
/// `A^H A` with deterministic start vectors. The all-ones start is followed
/// by two fixed pseudo-random restarts so a start vector orthogonal to the
/// top singular subspace cannot stall the estimate; the largest Rayleigh
/// value wins. Relative accuracy is driven to ~1e-12.
pub fn op_norm_2(a: &ComplexMatrix) -> f64 {
    let n = a.cols();
    // sigma_max is at least the largest column 2-norm; use it as a floor.
    let mut best: f64 = (0..n)
        .map(|j| {
            (0..a.rows())
                .map(|i| a.get(i, j).norm_sqr())
                .sum::<f64>()
                .sqrt()
        })
        .fold(0.0, f64::max);
    if best == 0.0 {
        return 0.0;
    }
    for start in 0..3u64 {
        let x0 = start_vector(n, start);
        best = best.max(power_iteration(a, x0));
    }
    // Runtime validation against the rank-free Frobenius sandwich
    // fro/sqrt(min(m,n)) <= sigma_1 <= fro; both ends hold for every matrix,
    // so clamping only ever moves a stalled estimate toward the truth.
    let fro = a.frobenius_norm();
    let floor = fro / (a.rows().min(n) as f64).sqrt();
    best.clamp(floor, fro)
}

fn start_vector(n: usize, variant: u64) -> Vec<Complex64> {
    if variant == 0 {
        return vec![Complex64::new(1.0, 0.0); n];
    }
    // Fixed splitmix64 stream keyed by the variant; deterministic across runs.
    let mut state = 0x9E37_79B9_7F4A_7C15u64.wrapping_mul(variant.wrapping_add(1));
    let mut next = move || {
        state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z = z ^ (z >> 31);
        (z as f64 / u64::MAX as f64) * 2.0 - 1.0
    };
    (0..n)
        .map(|_| Complex64::new(next(), next()))
        .collect()
}

fn power_iteration(a: &ComplexMatrix, mut x: Vec<Complex64>) -> f64 {
    const MAX_ITER: usize = 100_000;
    const REL_TOL: f64 = 5e-15;

    let (m, n) = (a.rows(), a.cols());
    normalize(&mut x);
    let mut y = vec![Complex64::new(0.0, 0.0); m];
    let mut sigma = 0.0f64;
    let mut stable = 0usize;
    for _ in 0..MAX_ITER {
        // y = A x
        for i in 0..m {
            let row = a.row(i);
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..n {
                acc += row[j] * x[j];
            }
            y[i] = acc;
        }
        let new_sigma = y.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if new_sigma == 0.0 {
            return sigma;
        }
        // x = A^H y, renormalized
        for (j, xj) in x.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..m {
                acc += a.get(i, j).conj() * y[i];
            }
            *xj = acc;
        }
        normalize(&mut x);
        if (new_sigma - sigma).abs() <= REL_TOL * new_sigma.max(f64::MIN_POSITIVE) {
            stable += 1;
            if stable >= 3 {
                return new_sigma;
            }
        } else {
            stable = 0;
        }
        sigma = new_sigma;
    }
    sigma
}

fn normalize(x: &mut [Complex64]) {
    let norm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm > 0.0 {
        let inv = 1.0 / norm;
        for z in x.iter_mut() {
            *z *= inv;
        }
    }
}

/// Operator 1-norm: the exact maximum column absolute sum.
pub fn op_norm_1(a: &ComplexMatrix) -> f64 {
    (0..a.cols())
        .map(|j| (0..a.rows()).map(|i| a.get(i, j).norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Frobenius norm and entrywise 1-norm, in that order.
pub fn matrix_norms(a: &ComplexMatrix) -> (f64, f64) {
    (a.frobenius_norm(), a.entrywise_l1_norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn diagonal_spectral_norm() {
        let a = ComplexMatrix::from_fn(2, 2, |i, j| {
            if i == j {
                c(if i == 0 { 3.0 } else { 1.0 }, 0.0)
            } else {
                c(0.0, 0.0)
            }
        });
        assert!((op_norm_2(&a) - 3.0).abs() < 1e-12);
    }

    #[test]
    fn zero_matrix_norms() {
        let a = ComplexMatrix::zeros(3, 2);
        assert_eq!(op_norm_2(&a), 0.0);
        assert_eq!(op_norm_1(&a), 0.0);
        assert_eq!(matrix_norms(&a), (0.0, 0.0));
    }

    #[test]
    fn column_sum_example() {
        // [[1, -2], [3j, 0]] -> column sums (1 + 3, 2 + 0) -> 4.
        let a = ComplexMatrix::new(2, 2, vec![c(1.0, 0.0), c(-2.0, 0.0), c(0.0, 3.0), c(0.0, 0.0)])
            .unwrap();
        assert_eq!(op_norm_1(&a), 4.0);
    }

    #[test]
    fn op_norm_1_matches_basis_probes() {
        let a = ComplexMatrix::from_fn(4, 3, |i, j| c((i * 3 + j) as f64 * 0.3 - 1.0, j as f64));
        let probed = (0..3)
            .map(|j| {
                a.mul_vec(&crate::linalg::ComplexVector::basis(3, j)).norm1()
            })
            .fold(0.0, f64::max);
        assert_eq!(op_norm_1(&a), probed);
    }

    #[test]
    fn identity_norms() {
        let id = ComplexMatrix::identity(3);
        let (fro, l1) = matrix_norms(&id);
        assert!((fro - 3f64.sqrt()).abs() < 1e-15);
        assert!((l1 - 3.0).abs() < 1e-15);
        assert!((op_norm_1(&id) - 1.0).abs() < 1e-15);
        assert!((op_norm_2(&id) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn spectral_norm_bounded_by_frobenius() {
        let a = ComplexMatrix::from_fn(5, 4, |i, j| c((i as f64 - j as f64) * 0.7, i as f64 * 0.2));
        assert!(op_norm_2(&a) <= a.frobenius_norm() + 1e-10);
    }

    #[test]
    fn masked_dft_frobenius_closed_form() {
        // ||D_P F D_Q||_F = sqrt(|P||Q|/m) since every DFT entry has modulus
        // 1/sqrt(m).
        let m = 12usize;
        let f = crate::linalg::dft_matrix(m).unwrap();
        let p = crate::linalg::IndexSet::new(m, vec![2, 5, 9]).unwrap();
        let q = crate::linalg::IndexSet::new(m, vec![1, 4, 6, 11]).unwrap();
        let masked = crate::linalg::selector(&p)
            .mul(&f)
            .mul(&crate::linalg::selector(&q));
        let (fro, _) = matrix_norms(&masked);
        let expected = ((p.len() * q.len()) as f64 / m as f64).sqrt();
        assert!((fro - expected).abs() < 1e-12);
    }

    #[test]
    fn frobenius_matches_entrywise_sum() {
        let a = ComplexMatrix::from_fn(3, 3, |i, j| c(i as f64 + 1.0, -(j as f64)));
        let direct: f64 = (0..3)
            .flat_map(|i| (0..3).map(move |j| (i, j)))
            .map(|(i, j)| a.get(i, j).norm_sqr())
            .sum();
        let (fro, _) = matrix_norms(&a);
        assert!((fro * fro - direct).abs() < 1e-12);
    }
}
