//! Recovery procedures: the linear stable-recovery operator for erased and
//! noisy observations, ℓ1 subspace denoising, and the (P0)/(P1) sparse
//! signal separation programs with their coherence threshold test.
//!
//! The convex pieces are solved by operator splitting with the complex
//! soft-threshold (shrink the modulus, keep the phase); nothing here forms
//! an explicit matrix inverse.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::{self, BoundsError};
use crate::linalg::{
    ensure_unitary, factor, selector, ComplexMatrix, ComplexVector, Dictionary, IndexSet,
    LinalgError, UNITARY_TOL,
};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const RANK_REL_TOL: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum RecoveryError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error("recovery impossible: delta = {delta} is not below 1")]
    NotRecoverable { delta: f64 },
    #[error("matrix has rank {rank}, expected full column rank {cols}")]
    RankDeficient { rank: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("support search guard: ambient dimension {0} exceeds 24")]
    SearchGuard(usize),
}

pub type Result<T> = std::result::Result<T, RecoveryError>;

/// Iterative solver parameters. `seed` fully determines any internal
/// randomization (the splitting solvers used here are deterministic, so it
/// is recorded but not consumed).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolverConfig {
    pub max_iterations: usize,
    pub abs_tolerance: f64,
    pub rel_tolerance: f64,
    pub penalty: f64,
    pub seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            max_iterations: 50_000,
            abs_tolerance: 1e-8,
            rel_tolerance: 1e-6,
            penalty: 1.0,
            seed: 0,
        }
    }
}

impl SolverConfig {
    /// Tightened settings for callers that assert recovery down to 1e-6.
    pub fn strict() -> Self {
        Self {
            max_iterations: 200_000,
            abs_tolerance: 1e-10,
            rel_tolerance: 1e-9,
            penalty: 1.0,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolverStatus {
    Converged,
    MaxIter,
    Infeasible,
}

/// Iteration-level residual history, recorded when tracing is requested.
#[derive(Debug, Clone, Default, Serialize)]
pub struct SolverTrace {
    pub primal: Vec<f64>,
    pub dual: Vec<f64>,
}

/// Separation instance: observation `w = A y + B z` with sparsity budget
/// `sparsity_s` on `y`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeparationProblem {
    pub a: Dictionary,
    pub b: Dictionary,
    pub w: ComplexVector,
    pub sparsity_s: usize,
}

impl SeparationProblem {
    pub fn new(a: Dictionary, b: Dictionary, w: ComplexVector, sparsity_s: usize) -> Result<Self> {
        if a.rows() != b.rows() || a.rows() != w.dim() {
            return Err(RecoveryError::Dimension(format!(
                "A is {}x{}, B is {}x{}, w has length {}",
                a.rows(),
                a.cols(),
                b.rows(),
                b.cols(),
                w.dim()
            )));
        }
        Ok(Self {
            a,
            b,
            w,
            sparsity_s,
        })
    }
}

/// Recovered pair together with solver diagnostics. The feasibility residual
/// is `||A y + B z - w||_2` for the returned pair.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeparationSolution {
    pub y: ComplexVector,
    pub z: ComplexVector,
    pub objective: f64,
    pub feasibility_residual: f64,
    pub solver_status: SolverStatus,
    pub iterations: usize,
}

/// Soft-threshold for complex scalars: shrink the modulus by `kappa`, keep
/// the phase.
pub fn soft_threshold(v: Complex64, kappa: f64) -> Complex64 {
    let mag = v.norm();
    if mag <= kappa {
        ZERO
    } else {
        v * ((mag - kappa) / mag)
    }
}

// ---------------------------------------------------------------------------
// Stable linear recovery
// ---------------------------------------------------------------------------

/// Recovers `p` in the span of the `Q`-columns of `U` from the observation
/// `y = p_{P^c} + n` in which the entries on `P` are erased. Solves
/// `(I - D_P P_Q(U)) x = D_{P^c} y` and returns the estimate together with
/// the error constant `C = 1/(1 - Δ)`, valid as
/// `||p_hat - p||_2 <= C ||n_{P^c}||_2`.
pub fn stable_linear_recovery(
    u: &ComplexMatrix,
    q: &IndexSet,
    p: &IndexSet,
    y_obs: &ComplexVector,
) -> Result<(ComplexVector, f64)> {
    ensure_unitary(u, UNITARY_TOL)?;
    if y_obs.dim() != u.rows() {
        return Err(RecoveryError::Dimension(format!(
            "observation has length {}, expected {}",
            y_obs.dim(),
            u.rows()
        )));
    }
    let d = bounds::delta(u, p, q)?;
    if d >= 1.0 - 1e-9 {
        return Err(RecoveryError::NotRecoverable { delta: d });
    }
    let m = u.rows();
    let proj = crate::linalg::projector(u, q)?;
    let system = ComplexMatrix::identity(m).sub(&selector(p).mul(&proj));
    let rhs = y_obs.restrict(&p.complement());
    let p_hat = factor::lu_solve(&system, &rhs)?;
    Ok((p_hat, 1.0 / (1.0 - d)))
}

// ---------------------------------------------------------------------------
// L1 subspace denoising
// ---------------------------------------------------------------------------

/// Minimizer of `||y - w||_1` over `w` in the span of the `Q`-columns of
/// `U`, with diagnostics.
#[derive(Debug, Clone)]
pub struct DenoiseSolution {
    pub w: ComplexVector,
    pub objective: f64,
    pub status: SolverStatus,
    pub iterations: usize,
}

/// ℓ1 denoising onto the subspace spanned by the `Q`-columns of `U`:
/// parametrizes `w = U_Q c` and solves the complex ℓ1 regression
/// `min_c ||U_Q c - y||_1` by operator splitting. When the noise is
/// supported on a set `P` with `Σ_{P,Q}(U) < 1/2` the minimizer recovers the
/// clean signal exactly.
pub fn l1_subspace_denoise(
    u: &ComplexMatrix,
    q: &IndexSet,
    y_obs: &ComplexVector,
    cfg: &SolverConfig,
) -> Result<DenoiseSolution> {
    l1_subspace_denoise_traced(u, q, y_obs, cfg, None)
}

pub fn l1_subspace_denoise_traced(
    u: &ComplexMatrix,
    q: &IndexSet,
    y_obs: &ComplexVector,
    cfg: &SolverConfig,
    mut trace: Option<&mut SolverTrace>,
) -> Result<DenoiseSolution> {
    ensure_unitary(u, UNITARY_TOL)?;
    if y_obs.dim() != u.rows() {
        return Err(RecoveryError::Dimension(format!(
            "observation has length {}, expected {}",
            y_obs.dim(),
            u.rows()
        )));
    }
    let m = u.rows();
    let Some(a) = u.select_columns(q) else {
        // Empty Q: the subspace is {0}.
        return Ok(DenoiseSolution {
            w: ComplexVector::zeros(m),
            objective: y_obs.norm1(),
            status: SolverStatus::Converged,
            iterations: 0,
        });
    };
    let k = a.cols();
    let rho = cfg.penalty;
    let adj = a.adjoint();

    // min ||z||_1 subject to A c - z = y; A has orthonormal columns so the
    // c-update is a plain adjoint application.
    let mut c = adj.mul_vec(y_obs);
    let mut z = ComplexVector::zeros(m);
    let mut dual = ComplexVector::zeros(m);
    let mut status = SolverStatus::MaxIter;
    let mut iterations = cfg.max_iterations;
    for iter in 1..=cfg.max_iterations {
        let target = y_obs.add(&z).sub(&dual);
        c = adj.mul_vec(&target);
        let ac = a.mul_vec(&c);
        let z_prev = z.clone();
        let shifted = ac.sub(y_obs).add(&dual);
        z = ComplexVector::from_entries(
            shifted
                .entries()
                .iter()
                .map(|&v| soft_threshold(v, 1.0 / rho))
                .collect(),
        );
        let primal_vec = ac.sub(y_obs).sub(&z);
        dual = dual.add(&primal_vec);
        let primal = primal_vec.norm2();
        let dzn = adj.mul_vec(&z.sub(&z_prev)).norm2() * rho;
        if let Some(t) = trace.as_deref_mut() {
            t.primal.push(primal);
            t.dual.push(dzn);
        }
        let eps_pri = (m as f64).sqrt() * cfg.abs_tolerance
            + cfg.rel_tolerance * ac.norm2().max(z.norm2()).max(y_obs.norm2());
        let eps_dual =
            (k as f64).sqrt() * cfg.abs_tolerance + cfg.rel_tolerance * rho * dual.norm2();
        if primal <= eps_pri && dzn <= eps_dual {
            status = SolverStatus::Converged;
            iterations = iter;
            break;
        }
    }
    let w = a.mul_vec(&c);
    Ok(DenoiseSolution {
        objective: y_obs.sub(&w).norm1(),
        w,
        status,
        iterations,
    })
}

// ---------------------------------------------------------------------------
// Basis pursuit
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct BasisPursuitSolution {
    pub x: ComplexVector,
    pub objective: f64,
    pub status: SolverStatus,
    pub iterations: usize,
    pub constraint_residual: f64,
}

/// Minimum-ℓ1 solution of `M x = b` by operator splitting: alternate the
/// complex soft-threshold with a projection onto the affine constraint set.
/// The returned iterate is projected onto the constraint set, so it satisfies
/// `||M x - b||_2` to solver precision whenever `b` is in the range of `M`;
/// otherwise the status is `Infeasible`.
pub fn basis_pursuit(
    m_mat: &ComplexMatrix,
    b: &ComplexVector,
    cfg: &SolverConfig,
) -> Result<BasisPursuitSolution> {
    basis_pursuit_traced(m_mat, b, cfg, None)
}

pub fn basis_pursuit_traced(
    m_mat: &ComplexMatrix,
    b: &ComplexVector,
    cfg: &SolverConfig,
    mut trace: Option<&mut SolverTrace>,
) -> Result<BasisPursuitSolution> {
    if b.dim() != m_mat.rows() {
        return Err(RecoveryError::Dimension(format!(
            "b has length {}, expected {}",
            b.dim(),
            m_mat.rows()
        )));
    }
    let n = m_mat.cols();
    let sv = factor::svd(m_mat);
    let project = |v: &ComplexVector| -> ComplexVector {
        let residual = m_mat.mul_vec(v).sub(b);
        v.sub(&sv.pinv_apply(&residual, RANK_REL_TOL))
    };

    let least_norm = sv.pinv_apply(b, RANK_REL_TOL);
    let range_residual = m_mat.mul_vec(&least_norm).sub(b).norm2();
    if range_residual > cfg.abs_tolerance * (1.0 + b.norm2()) {
        return Ok(BasisPursuitSolution {
            objective: least_norm.norm1(),
            x: least_norm,
            status: SolverStatus::Infeasible,
            iterations: 0,
            constraint_residual: range_residual,
        });
    }

    let rho = cfg.penalty;
    let mut x = least_norm.clone();
    let mut z = x.clone();
    let mut dual = ComplexVector::zeros(n);
    let mut status = SolverStatus::MaxIter;
    let mut iterations = cfg.max_iterations;
    for iter in 1..=cfg.max_iterations {
        x = project(&z.sub(&dual));
        let z_prev = z.clone();
        let shifted = x.add(&dual);
        z = ComplexVector::from_entries(
            shifted
                .entries()
                .iter()
                .map(|&v| soft_threshold(v, 1.0 / rho))
                .collect(),
        );
        dual = dual.add(&x).sub(&z);
        let primal = x.sub(&z).norm2();
        let dual_res = z.sub(&z_prev).norm2() * rho;
        if let Some(t) = trace.as_deref_mut() {
            t.primal.push(primal);
            t.dual.push(dual_res);
        }
        let eps_pri =
            (n as f64).sqrt() * cfg.abs_tolerance + cfg.rel_tolerance * x.norm2().max(z.norm2());
        let eps_dual =
            (n as f64).sqrt() * cfg.abs_tolerance + cfg.rel_tolerance * rho * dual.norm2();
        if primal <= eps_pri && dual_res <= eps_dual {
            status = SolverStatus::Converged;
            iterations = iter;
            break;
        }
    }
    // Return the sparse iterate pushed back onto the constraint set.
    let x_final = project(&z);
    let constraint_residual = m_mat.mul_vec(&x_final).sub(b).norm2();
    Ok(BasisPursuitSolution {
        objective: x_final.norm1(),
        x: x_final,
        status,
        iterations,
        constraint_residual,
    })
}

// ---------------------------------------------------------------------------
// Separation programs
// ---------------------------------------------------------------------------

/// Checks that `B` has full column rank and returns the orthonormal basis of
/// the orthogonal complement of its range (`None` when the complement is
/// trivial).
fn complement_of_range(b: &Dictionary) -> Result<Option<ComplexMatrix>> {
    let sv = factor::svd(b.matrix());
    let rank = sv.rank(RANK_REL_TOL);
    if rank < b.cols() {
        return Err(RecoveryError::RankDeficient {
            rank,
            cols: b.cols(),
        });
    }
    Ok(factor::orthonormal_complement(b.matrix()))
}

fn assemble_solution(
    prob: &SeparationProblem,
    y: ComplexVector,
    status: SolverStatus,
    iterations: usize,
    objective: f64,
) -> SeparationSolution {
    // z from least squares on B z = w - A y (the model convention).
    let target = prob.w.sub(&prob.a.matrix().mul_vec(&y));
    let z = factor::lstsq(prob.b.matrix(), &target, RANK_REL_TOL);
    let feasibility_residual = prob
        .a
        .matrix()
        .mul_vec(&y)
        .add(&prob.b.matrix().mul_vec(&z))
        .sub(&prob.w)
        .norm2();
    SeparationSolution {
        y,
        z,
        objective,
        feasibility_residual,
        solver_status: status,
        iterations,
    }
}

/// (P1): minimize `||y||_1` subject to `A y - w` lying in the range of `B`.
/// The nuisance variable is eliminated by projecting the constraint onto the
/// orthogonal complement of `range(B)`, which reduces the program to basis
/// pursuit on `N^H A y = N^H w`.
pub fn separate_p1(prob: &SeparationProblem, cfg: &SolverConfig) -> Result<SeparationSolution> {
    separate_p1_traced(prob, cfg, None)
}

pub fn separate_p1_traced(
    prob: &SeparationProblem,
    cfg: &SolverConfig,
    trace: Option<&mut SolverTrace>,
) -> Result<SeparationSolution> {
    let Some(n_basis) = complement_of_range(&prob.b)? else {
        // range(B) is everything: any y is feasible, so minimize ||y||_1 = 0.
        let y = ComplexVector::zeros(prob.a.cols());
        return Ok(assemble_solution(prob, y, SolverStatus::Converged, 0, 0.0));
    };
    let nh = n_basis.adjoint();
    let reduced = nh.mul(prob.a.matrix());
    let rhs = nh.mul_vec(&prob.w);
    let bp = basis_pursuit_traced(&reduced, &rhs, cfg, trace)?;
    Ok(assemble_solution(
        prob,
        bp.x,
        bp.status,
        bp.iterations,
        bp.objective,
    ))
}

/// (P0): minimize `||y||_0` subject to the same constraint, by exhaustive
/// support search in increasing support size, supports in lexicographic
/// order; each candidate support is solved by least squares on the reduced
/// system. First solution with residual at most `cfg.abs_tolerance` wins.
pub fn separate_p0(
    prob: &SeparationProblem,
    max_support: usize,
    cfg: &SolverConfig,
) -> Result<SeparationSolution> {
    let p_dim = prob.a.cols();
    if p_dim > 24 {
        return Err(RecoveryError::SearchGuard(p_dim));
    }
    let reduced_pair = match complement_of_range(&prob.b)? {
        Some(n_basis) => {
            let nh = n_basis.adjoint();
            Some((nh.mul(prob.a.matrix()), nh.mul_vec(&prob.w)))
        }
        None => None,
    };
    let Some((reduced, rhs)) = reduced_pair else {
        let y = ComplexVector::zeros(p_dim);
        return Ok(assemble_solution(prob, y, SolverStatus::Converged, 0, 0.0));
    };

    let mut examined = 0usize;
    let max_support = max_support.min(p_dim);
    for k in 0..=max_support {
        if k == 0 {
            examined += 1;
            if rhs.norm2() <= cfg.abs_tolerance {
                let y = ComplexVector::zeros(p_dim);
                return Ok(assemble_solution(
                    prob,
                    y,
                    SolverStatus::Converged,
                    examined,
                    0.0,
                ));
            }
            continue;
        }
        let mut combo = Combinations::new(p_dim, k);
        while let Some(support) = combo.next() {
            examined += 1;
            let rows: Vec<usize> = (0..reduced.rows()).collect();
            let sub = reduced.submatrix(&rows, support);
            let coeffs = factor::lstsq(&sub, &rhs, RANK_REL_TOL);
            let residual = sub.mul_vec(&coeffs).sub(&rhs).norm2();
            if residual <= cfg.abs_tolerance {
                let mut y = ComplexVector::zeros(p_dim);
                for (idx, &col) in support.iter().enumerate() {
                    y.set(col, coeffs.get(idx));
                }
                return Ok(assemble_solution(
                    prob,
                    y,
                    SolverStatus::Converged,
                    examined,
                    k as f64,
                ));
            }
        }
    }
    let y = ComplexVector::zeros(p_dim);
    let mut sol = assemble_solution(prob, y, SolverStatus::Infeasible, examined, f64::INFINITY);
    sol.objective = f64::INFINITY;
    Ok(sol)
}

/// Lexicographic k-combinations of `0..n`.
struct Combinations {
    n: usize,
    indices: Vec<usize>,
    started: bool,
    done: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Self {
            n,
            indices: (0..k).collect(),
            started: false,
            done: k > n,
        }
    }

    fn next(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.indices);
        }
        let k = self.indices.len();
        if k == 0 {
            self.done = true;
            return None;
        }
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                return None;
            }
            i -= 1;
            if self.indices[i] != i + self.n - k {
                break;
            }
        }
        self.indices[i] += 1;
        for j in (i + 1)..k {
            self.indices[j] = self.indices[j - 1] + 1;
        }
        Some(&self.indices)
    }
}

/// The separation threshold `2 s q < f_{A,B}(2s, q)`; below it, (P0) and
/// (P1) provably recover the planted `y`.
pub fn separation_threshold(
    a: &Dictionary,
    b: &Dictionary,
    s: usize,
    q: usize,
) -> Result<(bool, f64, f64)> {
    let lhs = 2.0 * s as f64 * q as f64;
    let rhs = bounds::f_ab(a, b, 2.0 * s as f64, q as f64)?;
    Ok((lhs < rhs, lhs, rhs))
}
