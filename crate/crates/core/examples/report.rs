//! Full cross-checked report for one input, then the built-in suite.

use peddeg::cli::{format_suite, run, run_suite, RunOptions, SeedChoice};

fn main() {
    let opts = RunOptions {
        polynomial: Some("x0^3 - (i*x0^2 + x1^2)*x2".into()),
        variables: Some(vec!["x0".into(), "x1".into(), "x2".into()]),
        seed: SeedChoice::Fixed(5),
        ..RunOptions::default()
    };
    let report = run(&opts).expect("report");
    println!("{}", report.to_json(false));
    println!();
    print!("{}", format_suite(&run_suite(5)));
}
