//! Projective ED degree of the Whitney umbrella from the cone critical system.

use peddeg::ed::{count_cone_critical_points, sample_generic_beta, CountOptions};
use peddeg::homotopy::TrackerConfig;
use peddeg::poly::parse_polynomial;

fn main() {
    let f = parse_polynomial("x0^2*x1 - x2*x3^2", &["x0", "x1", "x2", "x3"]).unwrap();
    for seed in [1, 2, 3] {
        let g = sample_generic_beta(3, seed, false).unwrap();
        let report = count_cone_critical_points(&f, &g, &TrackerConfig::with_seed(seed), &CountOptions::default())
            .expect("generic data found");
        println!(
            "seed {seed}: beta = [{}]  ->  {} critical points ({} of {} paths converged)",
            report.generic.beta.join(", "),
            report.count,
            report.path_summary.converged,
            report.bezout_number,
        );
    }
}
