//! Monte Carlo check of the small-ball concentration bound for random
//! matrices with rows drawn uniformly from a complex ball.

use super::{ExperimentError, Result};
use crate::linalg::ComplexVector;
use crate::random::{rng_from, trial_seed, uniform_complex_ball};

/// The constant `C(p, m, r) = (pi V_{p-1}(r) / V_p(r))^m`. With complex
/// ball volumes `V_p(r) = pi^p r^{2p} / p!` the ratio collapses to
/// `(p / r^2)^m`.
pub fn concentration_constant(p: usize, m: usize, r: f64) -> f64 {
    (p as f64 / (r * r)).powi(m as i32)
}

/// Estimates `P[||A u + v||_2 < delta]` over random `m x p` matrices `A`
/// whose rows are independent and uniform on the complex ball of radius `r`,
/// and evaluates the closed-form bound
/// `C(p,m,r) delta^{2m} / ||u||_2^{2m}`. Trials are seeded individually from
/// `(seed, trial index)`, so the estimate does not depend on how trials are
/// scheduled. Returns `(empirical, bound)`.
pub fn com_bound_mc(
    p: usize,
    m: usize,
    r: f64,
    u: &ComplexVector,
    v: &ComplexVector,
    delta: f64,
    trials: usize,
    seed: u64,
) -> Result<(f64, f64)> {
    if u.dim() != p || v.dim() != m {
        return Err(ExperimentError::Linalg(
            crate::linalg::LinalgError::DimensionMismatch(format!(
                "u must have length {p} and v length {m}, got {} and {}",
                u.dim(),
                v.dim()
            )),
        ));
    }
    let u_norm = u.norm2();
    if u_norm == 0.0 {
        return Err(ExperimentError::Domain {
            name: "u",
            range: "nonzero vectors",
            value: 0.0,
        });
    }
    for (name, value) in [("r", r), ("delta", delta)] {
        if !(value > 0.0) {
            return Err(ExperimentError::Domain {
                name,
                range: "(0, inf)",
                value,
            });
        }
    }
    let mut hits = 0usize;
    for trial in 0..trials {
        let mut rng = rng_from(trial_seed(seed, trial as u64));
        let mut sq_sum = 0.0;
        for i in 0..m {
            let row = uniform_complex_ball(&mut rng, p, r);
            // Row acts as a^H, so the component is <a, u> + v_i.
            let component = row.inner(u) + v.get(i);
            sq_sum += component.norm_sqr();
        }
        if sq_sum.sqrt() < delta {
            hits += 1;
        }
    }
    let empirical = hits as f64 / trials.max(1) as f64;
    let bound = concentration_constant(p, m, r) * (delta / u_norm).powi(2 * m as i32);
    Ok((empirical, bound))
}
