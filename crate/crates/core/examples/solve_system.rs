//! Total-degree homotopy on a small square system.

use peddeg::homotopy::{solve_system, PolynomialSystem, TrackerConfig};
use peddeg::poly::parse_polynomial;

fn main() {
    let vars = ["x", "y"];
    let equations = ["x^2 + y^2 - 5", "x*y - 2"]
        .iter()
        .map(|t| parse_polynomial(t, &vars).unwrap())
        .collect();
    let system = PolynomialSystem::new(equations, vars.iter().map(|v| v.to_string()).collect()).unwrap();

    let report = solve_system(&system, &TrackerConfig::with_seed(7)).unwrap();
    println!("Bezout number {}, paths {:?}", report.bezout_number, report.summary);
    for s in &report.solutions {
        println!(
            "x = {:+.6}, y = {:+.6}   residual {:.1e}, cluster {}",
            s.point[0], s.point[1], s.residual, s.cluster_size
        );
    }
}
