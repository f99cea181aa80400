//! Empirical check of the large-sieve inequality for trigonometric
//! polynomials against 1-periodic discrete measures.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{ExperimentError, Result};
use crate::linalg::ComplexVector;

/// Finite atomic measure on `[0, 1)`, extended 1-periodically.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DiscreteMeasure {
    /// `(location, weight)` pairs with locations in `[0,1)` and positive
    /// weights.
    pub atoms: Vec<(f64, f64)>,
}

impl DiscreteMeasure {
    pub fn new(atoms: Vec<(f64, f64)>) -> Result<Self> {
        for &(loc, w) in &atoms {
            if !(0.0..1.0).contains(&loc) {
                return Err(ExperimentError::Domain {
                    name: "atom location",
                    range: "[0, 1)",
                    value: loc,
                });
            }
            if !(w > 0.0 && w.is_finite()) {
                return Err(ExperimentError::Domain {
                    name: "atom weight",
                    range: "(0, inf)",
                    value: w,
                });
            }
        }
        Ok(Self { atoms })
    }

    /// Atoms at `p/m` for each member of a 1-based index set, unit weights.
    pub fn from_index_set(set: &crate::linalg::IndexSet) -> Self {
        let m = set.universe() as f64;
        Self {
            atoms: set
                .members()
                .iter()
                .map(|&p| ((p as f64 / m) % 1.0, 1.0))
                .collect(),
        }
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|&(_, w)| w).sum()
    }

    /// Supremum of the measure of open windows `(r, r + delta)` over the
    /// periodic extension. As with the Nyquist density, the supremum is
    /// attained as the window's left edge approaches an atom from below, so
    /// half-open windows anchored at atoms realize it.
    pub fn sup_open_window(&self, delta: f64) -> f64 {
        let extended: Vec<(f64, f64)> = self
            .atoms
            .iter()
            .copied()
            .chain(self.atoms.iter().map(|&(t, w)| (t + 1.0, w)))
            .collect();
        let mut best = 0.0f64;
        for &(anchor, _) in &self.atoms {
            let mass: f64 = extended
                .iter()
                .filter(|&&(t, _)| t >= anchor && t < anchor + delta)
                .map(|&(_, w)| w)
                .sum();
            best = best.max(mass);
        }
        best
    }
}

/// 1-periodic trigonometric polynomial
/// `psi(s) = exp(2 pi j phase) * sum_k a_k exp(-2 pi j k s)` with `k`
/// running from 1 to the coefficient count.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrigPolynomial {
    pub coefficients: ComplexVector,
    pub phase: f64,
}

impl TrigPolynomial {
    pub fn new(coefficients: ComplexVector, phase: f64) -> Result<Self> {
        if coefficients.dim() == 0 {
            return Err(ExperimentError::Domain {
                name: "coefficient count",
                range: "[1, inf)",
                value: 0.0,
            });
        }
        if !(0.0..1.0).contains(&phase) {
            return Err(ExperimentError::Domain {
                name: "phase",
                range: "[0, 1)",
                value: phase,
            });
        }
        Ok(Self {
            coefficients,
            phase,
        })
    }

    pub fn degree_count(&self) -> usize {
        self.coefficients.dim()
    }

    pub fn eval(&self, s: f64) -> Complex64 {
        let tau = 2.0 * std::f64::consts::PI;
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, &a) in self.coefficients.entries().iter().enumerate() {
            let theta = tau * ((k + 1) as f64) * s;
            acc += a * Complex64::new(theta.cos(), -theta.sin());
        }
        let rot = Complex64::new((tau * self.phase).cos(), (tau * self.phase).sin());
        rot * acc
    }

    pub fn coeff_energy(&self) -> f64 {
        self.coefficients
            .entries()
            .iter()
            .map(|z| z.norm_sqr())
            .sum()
    }
}

/// Evaluates both sides of the large-sieve inequality
/// `∫ |psi|^2 dmu <= (n - 1 + 1/delta) sup_r mu((r, r+delta)) ||a||_2^2`
/// and returns `(lhs, rhs)`.
pub fn sieve_empirical(
    mu: &DiscreteMeasure,
    psi: &TrigPolynomial,
    delta: f64,
) -> Result<(f64, f64)> {
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(ExperimentError::Domain {
            name: "delta",
            range: "(0, 1]",
            value: delta,
        });
    }
    let lhs: f64 = mu
        .atoms
        .iter()
        .map(|&(t, w)| w * psi.eval(t).norm_sqr())
        .sum();
    let factor = psi.degree_count() as f64 - 1.0 + 1.0 / delta;
    let rhs = factor * mu.sup_open_window(delta) * psi.coeff_energy();
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{complex_gaussian, rng_from};
    use rand::Rng;

    #[test]
    fn single_atom_single_term() {
        let mu = DiscreteMeasure::new(vec![(0.0, 1.0)]).unwrap();
        let psi = TrigPolynomial::new(
            ComplexVector::from_entries(vec![Complex64::new(1.0, 0.0)]),
            0.0,
        )
        .unwrap();
        for delta in [0.1, 0.5, 1.0] {
            let (lhs, rhs) = sieve_empirical(&mu, &psi, delta).unwrap();
            assert!((lhs - 1.0).abs() < 1e-12);
            assert!((rhs - 1.0 / delta).abs() < 1e-12);
            assert!(lhs <= rhs + 1e-9);
        }
    }

    #[test]
    fn picket_measure_reproduces_projection_energy() {
        // For x in the span of the first n DFT columns, ||x_P||_2^2 equals
        // (1/m) * integral of |psi|^2 against the measure with unit atoms at
        // p/m, where psi has the DFT coefficients. The sieve right-hand side
        // must dominate.
        let m = 16usize;
        let n = 4usize;
        let f = crate::linalg::dft_matrix(m).unwrap();
        let q = crate::linalg::IndexSet::circular_interval(m, 0, n).unwrap();
        let p = crate::experiments::picket_fence(m, n).unwrap();
        let mut rng = rng_from(12);
        let coeffs =
            ComplexVector::from_entries((0..n).map(|_| complex_gaussian(&mut rng)).collect());
        // x = F_Q a, with Q = {1..n} so psi's coefficients are exactly a.
        let cols = f.select_columns(&q).unwrap();
        let x = cols.mul_vec(&coeffs);
        let xp_energy = x.restrict(&p).norm2().powi(2);

        let mu = DiscreteMeasure::from_index_set(&p);
        let psi = TrigPolynomial::new(coeffs, 0.0).unwrap();
        let (lhs, rhs) = sieve_empirical(&mu, &psi, 0.25).unwrap();
        assert!((lhs / m as f64 - xp_energy).abs() < 1e-10);
        assert!(lhs <= rhs + 1e-9);
    }

    #[test]
    fn randomized_cases_never_violate() {
        let mut rng = rng_from(99);
        for _ in 0..300 {
            let atom_count = rng.random_range(1..8);
            let atoms: Vec<(f64, f64)> = (0..atom_count)
                .map(|_| (rng.random::<f64>() * 0.999, rng.random::<f64>() + 0.01))
                .collect();
            let mu = DiscreteMeasure::new(atoms).unwrap();
            let n = rng.random_range(1..6);
            let coeffs =
                ComplexVector::from_entries((0..n).map(|_| complex_gaussian(&mut rng)).collect());
            let psi = TrigPolynomial::new(coeffs, rng.random::<f64>() * 0.999).unwrap();
            let delta = rng.random::<f64>() * 0.99 + 0.01;
            let (lhs, rhs) = sieve_empirical(&mu, &psi, delta).unwrap();
            assert!(lhs <= rhs + 1e-9, "violated: lhs={lhs} rhs={rhs}");
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(DiscreteMeasure::new(vec![(1.0, 1.0)]).is_err());
        assert!(DiscreteMeasure::new(vec![(0.5, 0.0)]).is_err());
        let mu = DiscreteMeasure::new(vec![(0.5, 1.0)]).unwrap();
        let psi = TrigPolynomial::new(
            ComplexVector::from_entries(vec![Complex64::new(1.0, 0.0)]),
            0.0,
        )
        .unwrap();
        assert!(sieve_empirical(&mu, &psi, 0.0).is_err());
        assert!(sieve_empirical(&mu, &psi, 1.5).is_err());
    }
}
