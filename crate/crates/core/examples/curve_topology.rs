//! Topological side for plane curves: singularities, genus and the
//! Euler characteristic of the restricted obstruction.

use peddeg::ed::{sample_generic_beta, CountOptions};
use peddeg::homotopy::TrackerConfig;
use peddeg::poly::parse_polynomial;
use peddeg::topology::chi_eu_restricted;

fn main() {
    let curves = [
        ("nodal cubic", "x0^2*x2 - x1^2*(x1+x2)"),
        ("cubic tangent to Q", "x0^3 - (i*x0^2 + x1^2)*x2"),
        ("smooth conic", "x0^2 + 2*x1^2 + 5*x2^2"),
    ];
    for (name, text) in curves {
        let f = parse_polynomial(text, &["x0", "x1", "x2"]).unwrap();
        let g = sample_generic_beta(2, 3, false).unwrap();
        let t = chi_eu_restricted(&f, &g, &TrackerConfig::with_seed(3), &CountOptions::default(), &[])
            .expect("supported curve");
        println!("{name}: {text}");
        for s in &t.singularities {
            println!("  {:?} m={} r={} delta={} on Q: {}", s.kind, s.multiplicity, s.branch_count, s.delta, s.on_quadric);
        }
        println!(
            "  chi(X) = {}, #(X.Q) = {}, #(X.H) = {}, chi(X.U) = {}, degree = {}",
            t.chi_x, t.count_xq, t.count_xh, t.chi_x_u, t.ped_topological
        );
    }
}
