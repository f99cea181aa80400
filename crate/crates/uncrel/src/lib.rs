//! Numerical toolkit for uncertainty functionals in finite dimensions and
//! the recovery guarantees built on them.
//!
//! The crate computes the operator-norm functionals Δ and Σ that quantify
//! how much 2-norm or 1-norm energy a vector supported on `Q` in a unitary
//! basis can place on an index set `P`, evaluates the classical bounds on
//! them (Frobenius sandwich, large-sieve, coherence), and runs the recovery
//! procedures those bounds certify: stable linear recovery from erased and
//! noisy observations, exact ℓ1 denoising, and sparse signal separation via
//! the (P0)/(P1) programs. A set of experiment drivers covers picket-fence
//! constructions, the separation counterexample at the recovery threshold,
//! support-enumeration injectivity checks, Monte Carlo concentration
//! bounds, empirical large-sieve checks, and box-counting dimension
//! estimation.
//!
//! See the `examples/` directory for one runnable program per capability,
//! or the `uncrel` binary for a reproducible command-line front end.

// Indexed loops are the clearest form for the dense kernels here, and the
// negated float comparisons are deliberate NaN rejections.
#![allow(clippy::needless_range_loop)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(clippy::too_many_arguments)]

pub mod bounds;
pub mod cli;
pub mod experiments;
pub mod linalg;
pub mod random;
pub mod recovery;
pub mod verify;

pub use bounds::{bound_report, delta, sigma, PairBoundReport, UncertaintyReport};
pub use linalg::{
    coherence, dft_matrix, mutual_coherence, projector, selector, ComplexMatrix, ComplexVector,
    Dictionary, IndexSet,
};
pub use recovery::{
    basis_pursuit, l1_subspace_denoise, separate_p0, separate_p1, separation_threshold,
    stable_linear_recovery, SeparationProblem, SeparationSolution, SolverConfig, SolverStatus,
};
