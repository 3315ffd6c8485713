use num_complex::Complex64;
use peddeg::ed::{count_cone_critical_points, sample_generic_beta, CountOptions};
use peddeg::homotopy::TrackerConfig;
use peddeg::poly::{parse_polynomial, ExactPolynomial, GaussianRational};
use peddeg::topology::{
    chi_eu_restricted, classify_singularity, euler_characteristic_curve, multiplicity_at,
    parse_singularity_file, parse_strata_file, weighted_euler_characteristic, CurveSingularity,
    SingularityKind, TopologyError, TopologyReport, UserSingularity,
};
use proptest::prelude::*;

const VARS: [&str; 3] = ["x0", "x1", "x2"];

fn curve(text: &str) -> ExactPolynomial {
    parse_polynomial(text, &VARS).unwrap()
}

fn real(coords: [f64; 3]) -> Vec<Complex64> {
    coords.iter().map(|&c| Complex64::new(c, 0.0)).collect()
}

fn restricted(f: &ExactPolynomial, seed: u64, user: &[UserSingularity]) -> Result<TopologyReport, TopologyError> {
    let g = sample_generic_beta(2, seed, false).unwrap();
    chi_eu_restricted(f, &g, &TrackerConfig::with_seed(seed), &CountOptions::default(), user)
}

fn numeric(f: &ExactPolynomial, seed: u64) -> i64 {
    let g = sample_generic_beta(2, seed, false).unwrap();
    count_cone_critical_points(f, &g, &TrackerConfig::with_seed(seed), &CountOptions::default())
        .unwrap()
        .count as i64
}

/// Order of vanishing at the origin of the chart `x2 = 1`: the lowest total
/// degree in `x0, x1` among the terms of `F(x0, x1, 1)`.
fn order_at_chart_origin(f: &ExactPolynomial) -> u32 {
    f.terms().map(|(m, _)| m.exponents()[0] + m.exponents()[1]).min().unwrap()
}

#[test]
fn multiplicities() {
    let origin = real([0.0, 0.0, 1.0]);
    let nodal = curve("x0^2*x2 - x1^2*(x1+x2)");
    assert_eq!(multiplicity_at(&nodal, &origin).unwrap(), 2);
    let cuspidal = curve("x0^3 - x1^2*x2");
    assert_eq!(multiplicity_at(&cuspidal, &origin).unwrap(), order_at_chart_origin(&cuspidal));
    assert_eq!(multiplicity_at(&nodal, &real([0.0, -1.0, 1.0])).unwrap(), 1);
}

#[test]
fn node_and_cusp_classification() {
    let origin = real([0.0, 0.0, 1.0]);
    for text in ["x0^2*x2 - x1^2*(x1+x2)", "x0^3 - (i*x0^2 + x1^2)*x2"] {
        let s = classify_singularity(&curve(text), &origin).unwrap();
        assert_eq!(s.kind, SingularityKind::Node);
        assert_eq!((s.multiplicity, s.branch_count, s.delta), (2, 2, 1));
        assert_eq!(s.euler_obstruction(), 2);
    }
    let s = classify_singularity(&curve("x0^3 - x1^2*x2"), &origin).unwrap();
    assert_eq!(s.kind, SingularityKind::Cusp);
    assert_eq!((s.multiplicity, s.branch_count, s.delta), (2, 1, 1));
}

#[test]
fn tacnode_needs_user_data() {
    let f = curve("x1^2*x2^2 - x0^4");
    let err = classify_singularity(&f, &real([0.0, 0.0, 1.0])).unwrap_err();
    assert!(matches!(err, TopologyError::UnsupportedSingularity { .. }));
}

#[test]
fn euler_characteristics_of_plane_curves() {
    assert_eq!(euler_characteristic_curve(3, &[CurveSingularity::node(real([0.0, 0.0, 1.0]))]).unwrap(), 1);
    assert_eq!(euler_characteristic_curve(3, &[]).unwrap(), 0);
    assert_eq!(euler_characteristic_curve(1, &[]).unwrap(), 2);
}

#[test]
fn restricted_obstruction_of_the_examples() {
    let r = restricted(&curve("x0^2*x2 - x1^2*(x1+x2)"), 1, &[]).unwrap();
    assert_eq!((r.chi_x, r.count_xq, r.count_xh), (1, 6, 3));
    assert_eq!(r.chi_eu_restricted, -7);
    assert_eq!(r.ped_topological, 7);

    let r = restricted(&curve("x0^3 - (i*x0^2 + x1^2)*x2"), 1, &[]).unwrap();
    assert_eq!((r.chi_x, r.count_xq, r.count_xh), (1, 5, 3));
    assert_eq!(r.chi_eu_restricted, -6);

    // The node lies on Q, so nothing inside the complement is corrected.
    let r = restricted(&curve("x0^2*x1 - (x1 - i*x2)^2*x2"), 1, &[]).unwrap();
    assert_eq!(r.singularities.len(), 1);
    assert!(r.singularities[0].on_quadric);
    assert_eq!(r.chi_x_u, -7);
    assert_eq!(r.chi_eu_restricted, -7);
    assert_eq!(r.ped_topological, 7);
}

#[test]
fn topological_side_is_stable_across_seeds() {
    for text in ["x0^2*x2 - x1^2*(x1+x2)", "x0^2*x1 - (x1 - i*x2)^2*x2", "x0^3 - (i*x0^2 + x1^2)*x2"] {
        let f = curve(text);
        let values: Vec<i64> = (1..=3).map(|s| restricted(&f, s, &[]).unwrap().ped_topological).collect();
        assert!(values.windows(2).all(|w| w[0] == w[1]), "{text}: {values:?}");
    }
}

#[test]
fn smooth_curves_match_the_transversal_formula() {
    // For smooth X of degree d meeting Q in 2d points the degree is
    // -(chi(X) - 2d - d) = d^2.
    for (text, d) in [("x0^2 + 2*x1^2 + 5*x2^2", 2i64), ("x0^2 - 3*x0*x1 + 7*x1^2 + 2*x1*x2 - 4*x2^2", 2), ("x0^3 + 2*x1^3 + 3*x2^3", 3)] {
        let f = curve(text);
        let r = restricted(&f, 2, &[]).unwrap();
        assert_eq!(r.count_xq as i64, 2 * d, "{text}");
        let chi = 2 - (d - 1) * (d - 2);
        assert_eq!(r.ped_topological, -(chi - 2 * d - d), "{text}");
        assert_eq!(r.ped_topological, numeric(&f, 2), "{text}");
    }
}

#[test]
fn cross_pipeline_equality_on_more_curves() {
    for text in ["x0^3 - x1^2*x2 + x1^3", "x0^2*x2 - x1^3 - 2*x1^2*x2 + x2^3", "x0*x1*x2 + x0^3 + x1^3"] {
        let f = curve(text);
        let r = restricted(&f, 3, &[]).unwrap();
        assert_eq!(r.ped_topological, numeric(&f, 3), "{text}");
    }
}

#[test]
fn user_supplied_tacnodes() {
    // Two conics tangent at two points; each meets Q in four points.
    let f = curve("x1^2*x2^2 - x0^4");
    assert!(matches!(restricted(&f, 1, &[]), Err(TopologyError::UnsupportedSingularity { .. })));
    let user = parse_singularity_file("0:0:1 2 2 2\n0:1:0 2 2 2\n").unwrap();
    let r = restricted(&f, 1, &user).unwrap();
    assert_eq!(r.chi_x, 2);
    assert_eq!(r.count_xq, 8);
    assert_eq!(r.ped_topological, 8);
    assert_eq!(r.ped_topological, numeric(&f, 1));
}

#[test]
fn positive_dimensional_singular_locus_is_refused() {
    let f = curve("x0^2*x1^2 - x1^2*x2^2");
    assert!(restricted(&f, 1, &[]).is_err());
}

#[test]
fn strata_sums() {
    let w = |text: &str| weighted_euler_characteristic(&parse_strata_file(text).unwrap());
    assert_eq!(w("X-cap-U 13 1\nS2-cap-U -3 1\n"), 10);
    assert_eq!(w("only 0 1\n"), 0);
    assert_eq!(w("regular -9 1\nnode 1 2\n"), -7);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn two_lines_meet_with_multiplicity_two(a in prop::array::uniform3(-9i64..=9), b in prop::array::uniform3(-9i64..=9)) {
        let p = [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]];
        prop_assume!(p.iter().any(|&c| c != 0));
        let line = |c: [i64; 3]| {
            let terms = (0..3).map(|k| {
                let mut e = vec![0u32; 3];
                e[k] = 1;
                (e, GaussianRational::ratio(c[k], 1))
            });
            ExactPolynomial::from_terms(3, terms).unwrap()
        };
        let f = line(a).mul(&line(b));
        let point = real([p[0] as f64, p[1] as f64, p[2] as f64]);
        prop_assert_eq!(multiplicity_at(&f, &point).unwrap(), 2);
        prop_assert_eq!(classify_singularity(&f, &point).unwrap().kind, SingularityKind::Node);
    }
}
