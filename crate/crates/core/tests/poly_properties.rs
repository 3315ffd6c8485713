use num_complex::Complex64;
use peddeg::poly::{parse_polynomial, Coefficient, ExactPolynomial, GaussianRational};
use proptest::prelude::*;

const NAMES: [&str; 3] = ["x0", "x1", "x2"];

fn gaussian() -> impl Strategy<Value = GaussianRational> {
    (-20i64..=20, 1i64..=9, -20i64..=20, 1i64..=9, any::<bool>()).prop_map(|(a, b, c, d, complex)| {
        let re = GaussianRational::ratio(a, b);
        if complex {
            re + GaussianRational::ratio(c, d) * GaussianRational::imaginary_unit()
        } else {
            re
        }
    })
}

fn polynomial() -> impl Strategy<Value = ExactPolynomial> {
    prop::collection::vec((prop::collection::vec(0u32..4, 3), gaussian()), 0..6)
        .prop_map(|terms| ExactPolynomial::from_terms(3, terms).unwrap())
}

fn homogeneous(degree: u32) -> impl Strategy<Value = ExactPolynomial> {
    prop::collection::vec((0..=degree, 0..=degree, gaussian()), 1..6).prop_map(move |terms| {
        let terms = terms.into_iter().map(|(a, b, c)| {
            let a = a.min(degree);
            let b = b.min(degree - a);
            (vec![a, b, degree - a - b], c)
        });
        ExactPolynomial::from_terms(3, terms).unwrap()
    })
}

fn point() -> impl Strategy<Value = Vec<GaussianRational>> {
    prop::collection::vec(gaussian(), 3)
}

fn to_complex(x: &[GaussianRational]) -> Vec<Complex64> {
    x.iter().map(Coefficient::to_complex).collect()
}

fn close(a: Complex64, b: Complex64, scale: f64) -> bool {
    (a - b).norm() <= 1e-12 * scale.max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sum_and_product_evaluate_exactly(p in polynomial(), q in polynomial(), x in point()) {
        let (px, qx) = (p.evaluate_exact(&x).unwrap(), q.evaluate_exact(&x).unwrap());
        prop_assert_eq!(p.add(&q).evaluate_exact(&x).unwrap(), px.clone() + qx.clone());
        prop_assert_eq!(p.mul(&q).evaluate_exact(&x).unwrap(), px * qx);
    }

    #[test]
    fn sum_and_product_evaluate_in_floats(p in polynomial(), q in polynomial(), x in point()) {
        let xc = to_complex(&x);
        let (pc, qc) = (p.to_complex(), q.to_complex());
        let (px, qx) = (pc.evaluate(&xc).unwrap(), qc.evaluate(&xc).unwrap());
        let scale = px.norm() + qx.norm();
        prop_assert!(close(pc.add(&qc).evaluate(&xc).unwrap(), px + qx, scale));
        prop_assert!(close(pc.mul(&qc).evaluate(&xc).unwrap(), px * qx, px.norm() * qx.norm()));
    }

    #[test]
    fn euler_identity((d, p) in (1u32..5).prop_flat_map(|d| (Just(d), homogeneous(d)))) {
        let lhs = (0..3).fold(ExactPolynomial::zero(3), |acc, k| {
            acc.add(&ExactPolynomial::variable(3, k).mul(&p.partial_derivative(k).unwrap()))
        });
        prop_assert_eq!(lhs, p.scale(&GaussianRational::ratio(d as i64, 1)));
    }

    #[test]
    fn print_then_parse_round_trips(p in polynomial()) {
        let names: Vec<String> = NAMES.iter().map(|s| s.to_string()).collect();
        let text = p.display_with(&names).to_string();
        prop_assert_eq!(parse_polynomial(&text, &NAMES).unwrap(), p, "text: {}", text);
    }
}
