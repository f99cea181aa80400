//! Dense factorizations: one-sided Jacobi SVD, Householder QR, and LU with
//! partial pivoting. Sized for the small systems this crate works with.

use num_complex::Complex64;

use super::{ComplexMatrix, ComplexVector, LinalgError, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Thin singular value decomposition `A = U diag(s) V^H` with singular
/// values sorted in decreasing order. Columns of `U` belonging to zero
/// singular values are left as zeros.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: ComplexMatrix,
    pub singular_values: Vec<f64>,
    pub v: ComplexMatrix,
}

impl Svd {
    pub fn sigma_max(&self) -> f64 {
        self.singular_values.first().copied().unwrap_or(0.0)
    }

    /// Numerical rank with threshold `rel_tol * sigma_max`.
    pub fn rank(&self, rel_tol: f64) -> usize {
        let cut = rel_tol * self.sigma_max();
        self.singular_values.iter().filter(|&&s| s > cut).count()
    }

    /// Applies the pseudo-inverse: `x = V diag(1/s) U^H b`, dropping
    /// singular values at or below `rel_tol * sigma_max`.
    pub fn pinv_apply(&self, b: &ComplexVector, rel_tol: f64) -> ComplexVector {
        let cut = rel_tol * self.sigma_max();
        let k = self.singular_values.len();
        let mut coeffs = vec![ZERO; k];
        for (idx, &s) in self.singular_values.iter().enumerate() {
            if s <= cut {
                continue;
            }
            let mut acc = ZERO;
            for i in 0..self.u.rows() {
                acc += self.u.get(i, idx).conj() * b.get(i);
            }
            coeffs[idx] = acc / s;
        }
        let mut out = vec![ZERO; self.v.rows()];
        for (idx, &cf) in coeffs.iter().enumerate() {
            if cf == ZERO {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                *o += self.v.get(i, idx) * cf;
            }
        }
        ComplexVector::from_entries(out)
    }
}

/// One-sided Jacobi SVD. High relative accuracy on the small dense matrices
/// used throughout; wide inputs are handled through the adjoint.
pub fn svd(a: &ComplexMatrix) -> Svd {
    if a.rows() >= a.cols() {
        svd_tall(a)
    } else {
        let s = svd_tall(&a.adjoint());
        Svd {
            u: s.v,
            singular_values: s.singular_values,
            v: s.u,
        }
    }
}

fn svd_tall(a: &ComplexMatrix) -> Svd {
    const MAX_SWEEPS: usize = 64;
    const TOL: f64 = 1e-14;

    let (m, n) = (a.rows(), a.cols());
    // Column-major working copy.
    let mut b: Vec<Vec<Complex64>> = (0..n).map(|j| (0..m).map(|i| a.get(i, j)).collect()).collect();
    let mut v: Vec<Vec<Complex64>> = (0..n)
        .map(|j| (0..n).map(|i| if i == j { ONE } else { ZERO }).collect())
        .collect();

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                let alpha: f64 = b[p].iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = b[q].iter().map(|z| z.norm_sqr()).sum();
                let mut gamma = ZERO;
                for i in 0..m {
                    gamma += b[p][i].conj() * b[q][i];
                }
                let g = gamma.norm();
                if g <= TOL * (alpha * beta).sqrt() || g == 0.0 {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let sp = phase.conj() * s; // applied to column q when updating p
                let sq = phase * s; // applied to column p when updating q
                for i in 0..m {
                    let bp = b[p][i];
                    let bq = b[q][i];
                    b[p][i] = bp * c - bq * sp;
                    b[q][i] = bp * sq + bq * c;
                }
                for i in 0..n {
                    let vp = v[p][i];
                    let vq = v[q][i];
                    v[p][i] = vp * c - vq * sp;
                    v[q][i] = vp * sq + vq * c;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let norms: Vec<f64> = b
        .iter()
        .map(|col| col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
        .collect();
    order.sort_by(|&i, &j| norms[j].partial_cmp(&norms[i]).unwrap());

    let mut u = ComplexMatrix::zeros(m, n);
    let mut vm = ComplexMatrix::zeros(n, n);
    let mut singular_values = Vec::with_capacity(n);
    for (out_col, &j) in order.iter().enumerate() {
        let s = norms[j];
        singular_values.push(s);
        if s > 0.0 {
            let inv = 1.0 / s;
            for i in 0..m {
                u.set(i, out_col, b[j][i] * inv);
            }
        }
        for i in 0..n {
            vm.set(i, out_col, v[j][i]);
        }
    }
    Svd {
        u,
        singular_values,
        v: vm,
    }
}

/// Least-squares solution of `A x = b` through the pseudo-inverse.
pub fn lstsq(a: &ComplexMatrix, b: &ComplexVector, rel_tol: f64) -> ComplexVector {
    svd(a).pinv_apply(b, rel_tol)
}

/// Full Householder QR: returns `(Q, R)` with `Q` square `m x m` unitary and
/// `R` upper-triangular `m x n`.
pub fn qr_full(a: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let (m, n) = (a.rows(), a.cols());
    let mut r = a.clone();
    let mut q = ComplexMatrix::identity(m);
    for k in 0..n.min(m.saturating_sub(1)) {
        // Householder vector for column k below the diagonal.
        let norm_x: f64 = (k..m).map(|i| r.get(i, k).norm_sqr()).sum::<f64>().sqrt();
        if norm_x == 0.0 {
            continue;
        }
        let x0 = r.get(k, k);
        let phase = if x0.norm() > 0.0 { x0 / x0.norm() } else { ONE };
        let alpha = -phase * norm_x;
        let mut v: Vec<Complex64> = (k..m).map(|i| r.get(i, k)).collect();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        let beta = 2.0 / vnorm2;
        // R <- H R
        for j in k..n {
            let mut acc = ZERO;
            for (idx, vi) in v.iter().enumerate() {
                acc += vi.conj() * r.get(k + idx, j);
            }
            acc *= beta;
            for (idx, vi) in v.iter().enumerate() {
                let val = r.get(k + idx, j) - vi * acc;
                r.set(k + idx, j, val);
            }
        }
        // Q <- Q H (accumulate reflectors on the right)
        for i in 0..m {
            let mut acc = ZERO;
            for (idx, vi) in v.iter().enumerate() {
                acc += q.get(i, k + idx) * *vi;
            }
            acc *= beta;
            for (idx, vi) in v.iter().enumerate() {
                let val = q.get(i, k + idx) - acc * vi.conj();
                q.set(i, k + idx, val);
            }
        }
    }
    (q, r)
}

/// Orthonormal basis of the orthogonal complement of the column span of
/// `cols` (assumed full column rank). `None` when the complement is trivial.
pub fn orthonormal_complement(cols: &ComplexMatrix) -> Option<ComplexMatrix> {
    let (m, k) = (cols.rows(), cols.cols());
    if k >= m {
        return None;
    }
    let (q, _) = qr_full(cols);
    let rows: Vec<usize> = (0..m).collect();
    let tail: Vec<usize> = (k..m).collect();
    Some(q.submatrix(&rows, &tail))
}

/// Orthonormal basis of the null space of `A`, or `None` if the null space
/// is trivial. Rank is decided at `rel_tol * sigma_max`.
pub fn null_space(a: &ComplexMatrix, rel_tol: f64) -> Option<ComplexMatrix> {
    let s = svd(a);
    let r = s.rank(rel_tol);
    let n = a.cols();
    if r >= n {
        return None;
    }
    if r == 0 {
        return Some(ComplexMatrix::identity(n));
    }
    let rows: Vec<usize> = (0..n).collect();
    let lead: Vec<usize> = (0..r).collect();
    orthonormal_complement(&s.v.submatrix(&rows, &lead))
}

/// Solves the square system `A x = b` by LU with partial pivoting.
pub fn lu_solve(a: &ComplexMatrix, b: &ComplexVector) -> Result<ComplexVector> {
    assert!(a.is_square(), "lu_solve needs a square matrix");
    assert_eq!(a.rows(), b.dim(), "right-hand side length mismatch");
    let n = a.rows();
    let mut lu: Vec<Complex64> = a.entries().to_vec();
    let mut x: Vec<Complex64> = b.entries().to_vec();
    let mut piv: Vec<usize> = (0..n).collect();

    for k in 0..n {
        let (mut best, mut best_mag) = (k, lu[piv[k] * n + k].norm());
        for i in (k + 1)..n {
            let mag = lu[piv[i] * n + k].norm();
            if mag > best_mag {
                best = i;
                best_mag = mag;
            }
        }
        if best_mag == 0.0 {
            return Err(LinalgError::Singular(k));
        }
        piv.swap(k, best);
        let pk = piv[k];
        let pivot = lu[pk * n + k];
        for i in (k + 1)..n {
            let pi = piv[i];
            let factor = lu[pi * n + k] / pivot;
            lu[pi * n + k] = factor;
            for j in (k + 1)..n {
                let delta = factor * lu[pk * n + j];
                lu[pi * n + j] -= delta;
            }
        }
    }

    // Forward substitution on the permuted rows.
    let mut y = vec![ZERO; n];
    for i in 0..n {
        let pi = piv[i];
        let mut acc = x[pi];
        for j in 0..i {
            acc -= lu[pi * n + j] * y[j];
        }
        y[i] = acc;
    }
    // Back substitution.
    for i in (0..n).rev() {
        let pi = piv[i];
        let mut acc = y[i];
        for j in (i + 1)..n {
            acc -= lu[pi * n + j] * x[j];
        }
        x[i] = acc / lu[pi * n + i];
    }
    Ok(ComplexVector::from_entries(x))
}
