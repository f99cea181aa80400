//! Experiment constructions and empirical validators: picket fences, comb
//! vectors, the square-threshold separation counterexample, clipping and
//! inpainting scenario generators, plus the submodules for injectivity
//! checks, Monte Carlo concentration bounds, empirical sieve checks, and
//! box-counting dimension estimation.

mod boxdim;
mod montecarlo;
mod nullspace;
mod sieve;

pub use boxdim::{box_counting_dim, PointCloud};
pub use montecarlo::{com_bound_mc, concentration_constant};
pub use nullspace::{injectivity_check, InjectivityReport};
pub use sieve::{sieve_empirical, DiscreteMeasure, TrigPolynomial};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{dft_matrix, ComplexMatrix, ComplexVector, Dictionary, IndexSet, LinalgError};
use crate::recovery::{RecoveryError, SeparationProblem};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Recovery(#[from] RecoveryError),
    #[error("{divisor} does not divide {of}")]
    NotADivisor { divisor: usize, of: usize },
    #[error("{0} is not an even perfect square")]
    NotEvenSquare(usize),
    #[error("{name} must lie in {range}, got {value}")]
    Domain {
        name: &'static str,
        range: &'static str,
        value: f64,
    },
    #[error("enumeration guard: ambient dimensions ({p}, {q}) exceed 16")]
    EnumerationGuard { p: usize, q: usize },
    #[error("degenerate radius grid: {0}")]
    DegenerateGrid(String),
}

pub type Result<T> = std::result::Result<T, ExperimentError>;

fn require_divisor(divisor: usize, of: usize) -> Result<()> {
    if divisor == 0 || !of.is_multiple_of(divisor) {
        return Err(ExperimentError::NotADivisor { divisor, of });
    }
    Ok(())
}

/// The arithmetic index set `{m/n, 2m/n, …, m}` with `n` dividing `m`.
pub fn picket_fence(m: usize, n: usize) -> Result<IndexSet> {
    require_divisor(n, m)?;
    let step = m / n;
    let members = (1..=n).map(|s| s * step).collect();
    Ok(IndexSet::new(m, members)?)
}

/// The 0/1 comb `d^(a)` supported on `{a, 2a, …, m}` with `a` dividing `m`.
/// Its DFT image is the rescaled comb `(sqrt(m)/a) d^(m/a)`.
pub fn comb_vector(m: usize, a: usize) -> Result<ComplexVector> {
    require_divisor(a, m)?;
    let mut v = ComplexVector::zeros(m);
    for t in 1..=(m / a) {
        v.set(t * a - 1, ONE);
    }
    Ok(v)
}

/// Columns `e_{sqrt(m)}, e_{2 sqrt(m)}, …, e_m` of the identity: the
/// interference dictionary of the counterexample geometry.
pub fn picket_column_dictionary(m: usize) -> Result<Dictionary> {
    let root = integer_sqrt(m).ok_or(ExperimentError::NotEvenSquare(m))?;
    let mat = ComplexMatrix::from_fn(m, root, |i, j| {
        if i + 1 == root * (j + 1) {
            ONE
        } else {
            ZERO
        }
    });
    Ok(Dictionary::new(mat)?)
}

fn integer_sqrt(m: usize) -> Option<usize> {
    let r = (m as f64).sqrt().round() as usize;
    if r > 0 && r * r == m {
        Some(r)
    } else {
        None
    }
}

/// The separation instance that saturates the `s < sqrt(m)/2` threshold:
/// two feasible pairs with identical ℓ0 and ℓ1 norms, so neither (P0) nor
/// (P1) can tell them apart.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CounterexampleReport {
    pub m: usize,
    pub w: ComplexVector,
    pub planted: (ComplexVector, ComplexVector),
    pub alternative: (ComplexVector, ComplexVector),
    pub l0_pair: (usize, usize),
    pub l1_pair: (f64, f64),
    pub both_feasible: bool,
}

impl CounterexampleReport {
    pub fn problem(&self) -> Result<SeparationProblem> {
        let m = self.m;
        let a = Dictionary::new(dft_matrix(m)?)?;
        let b = picket_column_dictionary(m)?;
        Ok(SeparationProblem::new(
            a,
            b,
            self.w.clone(),
            self.l0_pair.0,
        )?)
    }
}

/// Builds the counterexample for `m = n^2` with `n` even: planted
/// `y = d^(2 sqrt(m)) - d^(sqrt(m))` with all-ones interference, alternative
/// `(d^(2 sqrt(m)), 0)`, both producing `w = (1/2) d^(sqrt(m)/2)`.
pub fn counterexample(m: usize) -> Result<CounterexampleReport> {
    let root = integer_sqrt(m).filter(|r| r % 2 == 0 && *r > 0);
    let Some(root) = root else {
        return Err(ExperimentError::NotEvenSquare(m));
    };
    let f = dft_matrix(m)?;
    let b = picket_column_dictionary(m)?;

    let y = comb_vector(m, 2 * root)?.sub(&comb_vector(m, root)?);
    let z = ComplexVector::from_entries(vec![ONE; root]);
    let y_tilde = comb_vector(m, 2 * root)?;
    let z_tilde = ComplexVector::zeros(root);

    let w = f.mul_vec(&y).add(&b.matrix().mul_vec(&z));
    let expected_w = comb_vector(m, root / 2)?.scale(Complex64::new(0.5, 0.0));
    let w_matches = w.sub(&expected_w).norm2() <= 1e-10;
    let alt_residual = f
        .mul_vec(&y_tilde)
        .add(&b.matrix().mul_vec(&z_tilde))
        .sub(&w)
        .norm2();

    let tol = 1e-12;
    let report = CounterexampleReport {
        m,
        w,
        l0_pair: (y.norm0(tol), y_tilde.norm0(tol)),
        l1_pair: (y.norm1(), y_tilde.norm1()),
        both_feasible: w_matches && alt_residual <= 1e-10,
        planted: (y, z),
        alternative: (y_tilde, z_tilde),
    };
    Ok(report)
}

/// A generated separation instance together with the interference vector it
/// implies, in the convention `w = A y + B z`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Scenario {
    pub problem: SeparationProblem,
    pub implied_z: ComplexVector,
}

/// Clips the modulus of `s = A y` at level `a`, preserving phases. The
/// corruption `z = g_a(s) - s` is sparse when few entries exceed the level,
/// and the interference dictionary is the identity.
pub fn make_clipping_scenario(
    y: &ComplexVector,
    a: &Dictionary,
    clip_level: f64,
) -> Result<Scenario> {
    if !(clip_level > 0.0) {
        return Err(ExperimentError::Domain {
            name: "clip_level",
            range: "(0, inf)",
            value: clip_level,
        });
    }
    let s = a.matrix().mul_vec(y);
    let clipped = ComplexVector::from_entries(
        s.entries()
            .iter()
            .map(|&v| {
                let mag = v.norm();
                if mag <= clip_level {
                    v
                } else {
                    v * (clip_level / mag)
                }
            })
            .collect(),
    );
    let implied_z = clipped.sub(&s);
    let m = a.rows();
    let problem = SeparationProblem::new(
        a.clone(),
        Dictionary::identity(m),
        clipped,
        y.norm0(1e-12),
    )?;
    Ok(Scenario { problem, implied_z })
}

/// Shrinks a scenario's interference dictionary to the columns its implied
/// corruption actually uses, the reduction applied when the corruption
/// locations are known: the interference ambient dimension then equals its
/// sparsity. Without it a full identity interference makes the separation
/// constraint vacuous.
pub fn restrict_to_implied_support(scenario: &Scenario) -> Result<Scenario> {
    let z = &scenario.implied_z;
    let support: Vec<usize> = (0..z.dim()).filter(|&i| z.get(i).norm() > 1e-12).collect();
    let b_mat = scenario.problem.b.matrix();
    let (b, implied_z) = if support.is_empty() {
        let m = b_mat.rows();
        let col = ComplexMatrix::from_fn(m, 1, |i, _| if i == 0 { ONE } else { ZERO });
        (Dictionary::new(col)?, ComplexVector::zeros(1))
    } else {
        let rows: Vec<usize> = (0..b_mat.rows()).collect();
        let mat = b_mat.submatrix(&rows, &support);
        let z_restricted =
            ComplexVector::from_entries(support.iter().map(|&i| z.get(i)).collect());
        (Dictionary::new(mat)?, z_restricted)
    };
    let problem = SeparationProblem::new(
        scenario.problem.a.clone(),
        b,
        scenario.problem.w.clone(),
        scenario.problem.sparsity_s,
    )?;
    Ok(Scenario { problem, implied_z })
}

/// Zeroes the entries of `s = A y` listed in `missing`; the interference
/// dictionary holds the corresponding identity columns, so its ambient
/// dimension equals the number of missing entries. An empty missing set
/// degenerates to a single unused identity column.
pub fn make_inpainting_scenario(
    y: &ComplexVector,
    a: &Dictionary,
    missing: &IndexSet,
) -> Result<Scenario> {
    let m = a.rows();
    if missing.universe() != m {
        return Err(ExperimentError::Linalg(LinalgError::DimensionMismatch(
            format!(
                "missing set universe {} does not match signal length {m}",
                missing.universe()
            ),
        )));
    }
    let s = a.matrix().mul_vec(y);
    let w = ComplexVector::from_entries(
        s.entries()
            .iter()
            .enumerate()
            .map(|(i, &v)| if missing.contains(i + 1) { ZERO } else { v })
            .collect(),
    );
    let (b, implied_z) = if missing.is_empty() {
        let col = ComplexMatrix::from_fn(m, 1, |i, _| if i == 0 { ONE } else { ZERO });
        (Dictionary::new(col)?, ComplexVector::zeros(1))
    } else {
        let cols = missing.positions();
        let mat = ComplexMatrix::from_fn(m, cols.len(), |i, j| {
            if i == cols[j] {
                ONE
            } else {
                ZERO
            }
        });
        let z = ComplexVector::from_entries(cols.iter().map(|&i| -s.get(i)).collect());
        (Dictionary::new(mat)?, z)
    };
    let problem = SeparationProblem::new(a.clone(), b, w, y.norm0(1e-12))?;
    Ok(Scenario { problem, implied_z })
}
