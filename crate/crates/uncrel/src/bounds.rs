//! Exact computation of the uncertainty functionals Δ and Σ and every bound
//! evaluated against them: the Frobenius sandwich, the DFT closed forms, the
//! large-sieve bound through the circular Nyquist density, coherence bounds
//! in both norms, and the general-dictionary `f_{A,B}` machinery.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{
    self, coherence, dft_matrix, ensure_unitary, mutual_coherence, op_norm_2, ComplexMatrix,
    Dictionary, IndexSet, LinalgError, UNITARY_TOL,
};

#[derive(Debug, Error)]
pub enum BoundsError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("{name} must lie in {range}, got {value}")]
    Domain {
        name: &'static str,
        range: &'static str,
        value: f64,
    },
    #[error("mutual coherence is zero; the bound is infinite / vacuous")]
    ZeroMutualCoherence,
    #[error("index set universe {set} does not match matrix dimension {matrix}")]
    UniverseMismatch { set: usize, matrix: usize },
}

pub type Result<T> = std::result::Result<T, BoundsError>;

fn check_sets(u: &ComplexMatrix, p: &IndexSet, q: &IndexSet) -> Result<()> {
    if !u.is_square() {
        return Err(BoundsError::Linalg(LinalgError::DimensionMismatch(
            format!("expected a square matrix, got {}x{}", u.rows(), u.cols()),
        )));
    }
    for set in [p, q] {
        if set.universe() != u.rows() {
            return Err(BoundsError::UniverseMismatch {
                set: set.universe(),
                matrix: u.rows(),
            });
        }
    }
    ensure_unitary(u, UNITARY_TOL)?;
    Ok(())
}

/// Δ: the operator 2-norm of `D_P P_Q(U)`, i.e. the largest fraction of
/// 2-norm a unit vector supported on `Q` in the basis `U` can place on `P`.
///
/// The trailing unitary factor leaves singular values unchanged, so the
/// value equals the largest singular value of the `|P| x |Q|` submatrix of
/// `U`.
pub fn delta(u: &ComplexMatrix, p: &IndexSet, q: &IndexSet) -> Result<f64> {
    check_sets(u, p, q)?;
    if p.is_empty() || q.is_empty() {
        return Ok(0.0);
    }
    let sub = u.submatrix(&p.positions(), &q.positions());
    Ok(op_norm_2(&sub).min(1.0))
}

/// Σ: the operator 1-norm of `D_P P_Q(U)`, computed exactly as the maximum
/// over columns `j` of the 1-norm of `D_P U D_Q ũ_j`, where `ũ_j` runs over
/// the columns of `U^H`.
pub fn sigma(u: &ComplexMatrix, p: &IndexSet, q: &IndexSet) -> Result<f64> {
    check_sets(u, p, q)?;
    if p.is_empty() || q.is_empty() {
        return Ok(0.0);
    }
    let m = u.rows();
    let p_pos = p.positions();
    let q_pos = q.positions();
    let mut best: f64 = 0.0;
    for j in 0..m {
        let mut col_sum = 0.0;
        for &i in &p_pos {
            let row = u.row(i);
            let jrow = u.row(j);
            let mut acc = num_complex::Complex64::new(0.0, 0.0);
            for &k in &q_pos {
                acc += row[k] * jrow[k].conj();
            }
            col_sum += acc.norm();
        }
        best = best.max(col_sum);
    }
    Ok(best)
}

/// Frobenius sandwich on Δ: lower bound
/// `sqrt(tr(D_P P_Q(U)) / min(|P|,|Q|))` and upper bound
/// `sqrt(tr(D_P P_Q(U)))`, where the trace is the energy of the `P x Q`
/// submatrix of `U`.
pub fn frobenius_bounds(u: &ComplexMatrix, p: &IndexSet, q: &IndexSet) -> Result<(f64, f64)> {
    check_sets(u, p, q)?;
    let smaller = p.len().min(q.len());
    if smaller == 0 {
        return Ok((0.0, 0.0));
    }
    let mut trace = 0.0;
    for &i in &p.positions() {
        let row = u.row(i);
        for &j in &q.positions() {
            trace += row[j].norm_sqr();
        }
    }
    Ok(((trace / smaller as f64).sqrt(), trace.sqrt()))
}

/// Circular Nyquist density `ρ(P, λ)`: the largest number of points of the
/// periodized set `P ∪ {m+p}` inside an open window of length `λ`, divided
/// by `λ`. The supremum over open windows `(r, r+λ)` is attained as the
/// window's left edge approaches a member from below, so the maximum is
/// taken over half-open windows `[p_i, p_i + λ)` anchored at members.
pub fn nyquist_density(p: &IndexSet, lambda: f64) -> Result<f64> {
    let m = p.universe() as f64;
    if !(lambda > 0.0 && lambda <= m) {
        return Err(BoundsError::Domain {
            name: "lambda",
            range: "(0, m]",
            value: lambda,
        });
    }
    if p.is_empty() {
        return Ok(0.0);
    }
    let extended: Vec<f64> = p
        .members()
        .iter()
        .map(|&k| k as f64)
        .chain(p.members().iter().map(|&k| (k + p.universe()) as f64))
        .collect();
    let mut best = 0usize;
    for &anchor in &extended {
        let count = extended
            .iter()
            .filter(|&&x| x >= anchor && x < anchor + lambda)
            .count();
        best = best.max(count);
    }
    Ok(best as f64 / lambda)
}

/// Large-sieve bound `sqrt((λ(n-1)/m + 1) ρ(P,λ))` on Δ for the DFT and a
/// circular-interval `Q` of length `n`. When no `λ` is supplied the bound is
/// minimized over a candidate grid: the distinct gaps of the periodized set,
/// `m/|P|`, and `m`, clipped to `(0, m]`. Returns the bound and the `λ`
/// used.
pub fn sieve_bound(
    m: usize,
    p: &IndexSet,
    interval_len: usize,
    lambda: Option<f64>,
) -> Result<(f64, f64)> {
    if p.universe() != m {
        return Err(BoundsError::UniverseMismatch {
            set: p.universe(),
            matrix: m,
        });
    }
    if interval_len == 0 || interval_len > m {
        return Err(BoundsError::Domain {
            name: "interval length",
            range: "1..=m",
            value: interval_len as f64,
        });
    }
    let eval = |lam: f64| -> Result<f64> {
        let rho = nyquist_density(p, lam)?;
        Ok(((lam * (interval_len as f64 - 1.0) / m as f64 + 1.0) * rho).sqrt())
    };
    match lambda {
        Some(lam) => {
            if !(lam > 0.0 && lam <= m as f64) {
                return Err(BoundsError::Domain {
                    name: "lambda",
                    range: "(0, m]",
                    value: lam,
                });
            }
            Ok((eval(lam)?, lam))
        }
        None => {
            if p.is_empty() {
                return Ok((0.0, m as f64));
            }
            let mut grid: Vec<f64> = Vec::new();
            let members = p.members();
            for w in members.windows(2) {
                grid.push((w[1] - w[0]) as f64);
            }
            // Wrap-around gap of the periodized set.
            grid.push((members[0] + m - members[members.len() - 1]) as f64);
            grid.push(m as f64 / p.len() as f64);
            grid.push(m as f64);
            grid.retain(|&lam| lam > 0.0 && lam <= m as f64);
            let mut best = (f64::INFINITY, m as f64);
            for &lam in &grid {
                let b = eval(lam)?;
                if b < best.0 {
                    best = (b, lam);
                }
            }
            Ok(best)
        }
    }
}

fn concat_coherence(u: &ComplexMatrix) -> Result<f64> {
    let m = u.rows();
    let id = Dictionary::identity(m);
    let ud = Dictionary::with_tolerance(u.clone(), 1e-6)?;
    Ok(coherence(&id.concat(&ud)?))
}

/// Coherence bound on Δ: `sqrt(|P||Q|) μ([I U])`.
pub fn coherence_bound_2(u: &ComplexMatrix, p: &IndexSet, q: &IndexSet) -> Result<f64> {
    check_sets(u, p, q)?;
    if p.is_empty() || q.is_empty() {
        return Ok(0.0);
    }
    let mu = concat_coherence(u)?;
    Ok(((p.len() * q.len()) as f64).sqrt() * mu)
}

/// Coherence bound on Σ: `|P||Q| μ²([I U])`.
pub fn coherence_bound_1(u: &ComplexMatrix, p: &IndexSet, q: &IndexSet) -> Result<f64> {
    check_sets(u, p, q)?;
    if p.is_empty() || q.is_empty() {
        return Ok(0.0);
    }
    let mu = concat_coherence(u)?;
    Ok((p.len() * q.len()) as f64 * mu * mu)
}

/// The pair function
/// `f_{A,B}(u,v) = [1+μ(A)(1-u)]_+ [1+μ(B)(1-v)]_+ / μ̄²(A,B)`.
pub fn f_ab(a: &Dictionary, b: &Dictionary, u: f64, v: f64) -> Result<f64> {
    let mu_bar = mutual_coherence(a, b)?;
    if mu_bar == 0.0 {
        return Err(BoundsError::ZeroMutualCoherence);
    }
    let left = (1.0 + coherence(a) * (1.0 - u)).max(0.0);
    let right = (1.0 + coherence(b) * (1.0 - v)).max(0.0);
    Ok(left * right / (mu_bar * mu_bar))
}

/// The 1-norm budget bounds for a pair `A p = B q`:
/// `||p_P||_1 <= |P| (μ(A)||p||_1 + μ̄(A,B)||q||_1) / (1+μ(A))` and its
/// symmetric counterpart for `||q_Q||_1`.
pub fn l1_budget_bound(
    a: &Dictionary,
    b: &Dictionary,
    p_size: usize,
    q_size: usize,
    p_l1: f64,
    q_l1: f64,
) -> Result<(f64, f64)> {
    for (name, value) in [("p_l1", p_l1), ("q_l1", q_l1)] {
        if !(value >= 0.0) {
            return Err(BoundsError::Domain {
                name,
                range: "[0, inf)",
                value,
            });
        }
    }
    let mu_a = coherence(a);
    let mu_b = coherence(b);
    let mu_bar = mutual_coherence(a, b)?;
    let bound_p = p_size as f64 * (mu_a * p_l1 + mu_bar * q_l1) / (1.0 + mu_a);
    let bound_q = q_size as f64 * (mu_b * q_l1 + mu_bar * p_l1) / (1.0 + mu_b);
    Ok((bound_p, bound_q))
}

/// Bounds for a pair of 1-norm concentrated vectors.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairBoundReport {
    /// `f_{A,B}(|P|, |Q|)`.
    pub f_value: f64,
    /// Coefficient bound on `||p_P||_1 / ||p||_1`; absent when its clamped
    /// denominator vanishes.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub frame1_bound: Option<f64>,
    /// Coefficient bound on `||q_Q||_1 / ||q||_1`; absent when its clamped
    /// denominator vanishes.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub frame2_bound: Option<f64>,
    /// Lower bound that `|P||Q|` must meet for such a pair to exist.
    pub frame3_lower: f64,
    /// Whether `|P||Q| >= frame3_lower`.
    pub admissible: bool,
}

/// Concentration bounds for a pair `A p = B q` with `p` concentrated on `P`
/// up to `eps_p` and `q` concentrated on `Q` up to `eps_q`, in 1-norm.
pub fn pair_bounds(
    a: &Dictionary,
    b: &Dictionary,
    p: &IndexSet,
    q: &IndexSet,
    eps_p: f64,
    eps_q: f64,
) -> Result<PairBoundReport> {
    for (name, value) in [("eps_p", eps_p), ("eps_q", eps_q)] {
        if !(0.0..=1.0).contains(&value) {
            return Err(BoundsError::Domain {
                name,
                range: "[0, 1]",
                value,
            });
        }
    }
    let mu_a = coherence(a);
    let mu_b = coherence(b);
    let mu_bar = mutual_coherence(a, b)?;
    if mu_bar == 0.0 {
        return Err(BoundsError::ZeroMutualCoherence);
    }
    let p_len = p.len() as f64;
    let q_len = q.len() as f64;
    let denom_p = ((1.0 + mu_a) * (1.0 - eps_p) - mu_a * p_len).max(0.0);
    let denom_q = ((1.0 + mu_b) * (1.0 - eps_q) - mu_b * q_len).max(0.0);

    let frame1_bound = (denom_q > 0.0).then(|| {
        p_len / (1.0 + mu_a) * (mu_a + mu_bar * mu_bar * q_len / denom_q)
    });
    let frame2_bound = (denom_p > 0.0).then(|| {
        q_len / (1.0 + mu_b) * (mu_b + mu_bar * mu_bar * p_len / denom_p)
    });
    let frame3_lower = denom_p * denom_q / (mu_bar * mu_bar);
    Ok(PairBoundReport {
        f_value: f_ab(a, b, p_len, q_len)?,
        frame1_bound,
        frame2_bound,
        frame3_lower,
        admissible: p_len * q_len >= frame3_lower,
    })
}

/// Exact Δ/Σ plus every applicable bound.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct UncertaintyReport {
    pub exact_delta: f64,
    pub exact_sigma: f64,
    pub frobenius_lower: f64,
    pub frobenius_upper: f64,
    /// `sqrt(max(|P|,|Q|)/m)`; present only when the basis is the DFT.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dft_lower: Option<f64>,
    /// `sqrt(|P||Q|/m)`; present only when the basis is the DFT.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dft_upper: Option<f64>,
    pub coherence_bound_2: f64,
    pub coherence_bound_1: f64,
    /// Large-sieve bound; present only for the DFT with a circular-interval
    /// `Q`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sieve_bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sieve_lambda: Option<f64>,
}

/// Whether `u` is entrywise equal to the DFT matrix of its size, to `tol`.
pub fn is_dft(u: &ComplexMatrix, tol: f64) -> bool {
    if !u.is_square() {
        return false;
    }
    let f = match dft_matrix(u.rows()) {
        Ok(f) => f,
        Err(_) => return false,
    };
    u.sub(&f).max_abs_entry() <= tol
}

/// Computes the full report: exact Δ and Σ, the Frobenius sandwich, the
/// coherence bounds, and — when `U` is numerically the DFT — the closed-form
/// DFT bounds, plus the large-sieve bound when `Q` is a circular interval.
pub fn bound_report(u: &ComplexMatrix, p: &IndexSet, q: &IndexSet) -> Result<UncertaintyReport> {
    check_sets(u, p, q)?;
    let m = u.rows();
    let exact_delta = delta(u, p, q)?;
    let exact_sigma = sigma(u, p, q)?;
    let (frobenius_lower, frobenius_upper) = frobenius_bounds(u, p, q)?;
    let cb2 = coherence_bound_2(u, p, q)?;
    let cb1 = coherence_bound_1(u, p, q)?;

    let mut report = UncertaintyReport {
        exact_delta,
        exact_sigma,
        frobenius_lower,
        frobenius_upper,
        dft_lower: None,
        dft_upper: None,
        coherence_bound_2: cb2,
        coherence_bound_1: cb1,
        sieve_bound: None,
        sieve_lambda: None,
    };

    if is_dft(u, 1e-10) {
        let sizes = (p.len() as f64, q.len() as f64);
        if p.is_empty() || q.is_empty() {
            report.dft_lower = Some(0.0);
            report.dft_upper = Some(0.0);
        } else {
            report.dft_lower = Some((sizes.0.max(sizes.1) / m as f64).sqrt());
            report.dft_upper = Some((sizes.0 * sizes.1 / m as f64).sqrt());
        }
        if let Some((_, n)) = q.as_circular_interval() {
            let (bound, lambda_used) = sieve_bound(m, p, n, None)?;
            report.sieve_bound = Some(bound);
            report.sieve_lambda = Some(lambda_used);
        } else if q.is_empty() {
            report.sieve_bound = Some(0.0);
            report.sieve_lambda = Some(m as f64);
        }
    }
    Ok(report)
}

/// Concentration lower bound `[1 - eps_p - eps_q]_+` on Δ, valid whenever a
/// nonzero `eps_p`-concentrated `p` and `eps_q`-concentrated `q` with
/// `p = U q` exist.
pub fn concentration_lower_bound(eps_p: f64, eps_q: f64) -> f64 {
    (1.0 - eps_p - eps_q).max(0.0)
}

/// Measures 2-norm concentration: the smallest `eps` with
/// `||x - x_A||_2 <= eps ||x||_2`; zero vector gives 0.
pub fn concentration_2(x: &linalg::ComplexVector, a: &IndexSet) -> f64 {
    let total = x.norm2();
    if total == 0.0 {
        return 0.0;
    }
    x.sub(&x.restrict(a)).norm2() / total
}

/// Measures 1-norm concentration analogously.
pub fn concentration_1(x: &linalg::ComplexVector, a: &IndexSet) -> f64 {
    let total = x.norm1();
    if total == 0.0 {
        return 0.0;
    }
    x.sub(&x.restrict(a)).norm1() / total
}
