//! Weighted Euler characteristic from a user strata file.

use peddeg::topology::{parse_strata_file, weighted_euler_characteristic};

const WHITNEY: &str = "\
# label chi eu, for the Whitney umbrella restricted to the complement of Q and H
X-cap-U   13 1
S2-cap-U  -3 1
";

fn main() {
    let strata = parse_strata_file(WHITNEY).unwrap();
    for s in &strata {
        println!("{:<10} chi = {:>3}  Eu = {}", s.label, s.chi, s.eu);
    }
    println!("degree from strata: {}", weighted_euler_characteristic(&strata));
}
