//! Support-enumeration injectivity checks for the concatenated dictionary
//! `[A B]` on the set of pairs with bounded support sizes.

use serde::Serialize;

use super::{ExperimentError, Result};
use crate::linalg::{factor, Dictionary};

/// Outcome of an injectivity check over all bounded-support column subsets.
#[derive(Debug, Clone, Serialize)]
pub struct InjectivityReport {
    pub injective: bool,
    /// Smallest singular value over the enumerated submatrices.
    pub min_sv: f64,
    /// 1-based column indices (in A, then in B) of a rank-deficient
    /// submatrix, when one exists.
    pub witness: Option<(Vec<usize>, Vec<usize>)>,
    /// Number of submatrices examined.
    pub submatrices: usize,
}

const SV_THRESHOLD: f64 = 1e-8;

/// Decides whether `[A B]` is one-to-one on pairs `(p, q)` with
/// `||p||_0 <= s` and `||q||_0 <= t` by checking that every submatrix with
/// at most `min(p, 2s)` columns from `A` and `min(q, 2t)` columns from `B`
/// has full column rank. Differences of such pairs have support bounded by
/// those budgets, and the smallest singular value only shrinks as columns
/// are added, so the maximal supports decide the answer; they are the ones
/// enumerated.
pub fn injectivity_check(
    a: &Dictionary,
    b: &Dictionary,
    s: usize,
    t: usize,
) -> Result<InjectivityReport> {
    let (p_dim, q_dim) = (a.cols(), b.cols());
    if p_dim > 16 || q_dim > 16 {
        return Err(ExperimentError::EnumerationGuard { p: p_dim, q: q_dim });
    }
    if a.rows() != b.rows() {
        return Err(ExperimentError::Linalg(
            crate::linalg::LinalgError::DimensionMismatch(format!(
                "row counts differ: {} vs {}",
                a.rows(),
                b.rows()
            )),
        ));
    }
    let budget_a = p_dim.min(2 * s);
    let budget_b = q_dim.min(2 * t);

    let mut min_sv = f64::INFINITY;
    let mut witness = None;
    let mut submatrices = 0usize;
    let rows: Vec<usize> = (0..a.rows()).collect();
    let joined = a.matrix().hcat(b.matrix())?;

    let subsets_a = combinations(p_dim, budget_a);
    let subsets_b = combinations(q_dim, budget_b);
    for sa in &subsets_a {
        for sb in &subsets_b {
            if sa.is_empty() && sb.is_empty() {
                continue;
            }
            submatrices += 1;
            let mut cols = Vec::with_capacity(sa.len() + sb.len());
            cols.extend_from_slice(sa);
            cols.extend(sb.iter().map(|&j| j + p_dim));
            let sub = joined.submatrix(&rows, &cols);
            // More columns than rows cannot have full column rank; the thin
            // spectrum does not carry those structural zeros.
            let smallest = if sub.cols() > sub.rows() {
                0.0
            } else {
                let sv = factor::svd(&sub);
                sv.singular_values.last().copied().unwrap_or(0.0)
            };
            if smallest < min_sv {
                min_sv = smallest;
            }
            if smallest <= SV_THRESHOLD && witness.is_none() {
                witness = Some((
                    sa.iter().map(|&j| j + 1).collect(),
                    sb.iter().map(|&j| j + 1).collect(),
                ));
            }
        }
    }
    if submatrices == 0 {
        return Ok(InjectivityReport {
            injective: true,
            min_sv: f64::INFINITY,
            witness: None,
            submatrices: 0,
        });
    }
    Ok(InjectivityReport {
        injective: witness.is_none(),
        min_sv,
        witness,
        submatrices,
    })
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k > n {
        return vec![(0..n).collect()];
    }
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..k).collect();
    if k == 0 {
        return vec![Vec::new()];
    }
    loop {
        out.push(current.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if current[i] != i + n - k {
                break;
            }
        }
        current[i] += 1;
        for j in (i + 1)..k {
            current[j] = current[j - 1] + 1;
        }
    }
}
