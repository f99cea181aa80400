//! Computes the uncertainty functionals and every applicable bound for the
//! classic picket-fence / interval pair, then for a random set pair.
//!
//! Run with: cargo run --example bounds_report

use uncrel::bounds::bound_report;
use uncrel::experiments::picket_fence;
use uncrel::linalg::{dft_matrix, IndexSet};
use uncrel::random::{random_subset, rng_from};

fn print_report(label: &str, report: &uncrel::bounds::UncertaintyReport) {
    println!("{label}");
    println!("  exact delta        = {:.9}", report.exact_delta);
    println!("  exact sigma        = {:.9}", report.exact_sigma);
    println!(
        "  frobenius sandwich = [{:.9}, {:.9}]",
        report.frobenius_lower, report.frobenius_upper
    );
    if let (Some(lo), Some(hi)) = (report.dft_lower, report.dft_upper) {
        println!("  dft closed forms   = [{lo:.9}, {hi:.9}]");
    }
    println!("  coherence bound 2  = {:.9}", report.coherence_bound_2);
    println!("  coherence bound 1  = {:.9}", report.coherence_bound_1);
    if let (Some(bound), Some(lambda)) = (report.sieve_bound, report.sieve_lambda) {
        println!("  sieve bound        = {bound:.9} (lambda = {lambda})");
    }
    println!();
}

fn main() {
    let m = 16usize;
    let f = dft_matrix(m).unwrap();

    // Picket fence with n = 4 teeth against an interval of length 4: the
    // exact value is sqrt(n/m) = 1/2, the crude upper bound is n/sqrt(m) = 1,
    // and the sieve bound lands at sqrt((2n-1)/m).
    let p = picket_fence(m, 4).unwrap();
    let q = IndexSet::circular_interval(m, 0, 4).unwrap();
    let report = bound_report(&f, &p, &q).unwrap();
    print_report("picket fence P = {4,8,12,16}, interval Q = {1..4}, m = 16:", &report);

    // A random pair for contrast; the sieve bound needs an interval Q, so
    // only the generic bounds appear when Q is scattered.
    let mut rng = rng_from(42);
    let p = random_subset(&mut rng, m, 5);
    let q = random_subset(&mut rng, m, 3);
    let report = bound_report(&f, &p, &q).unwrap();
    print_report(
        &format!("random P = {:?}, Q = {:?}:", p.members(), q.members()),
        &report,
    );
}
