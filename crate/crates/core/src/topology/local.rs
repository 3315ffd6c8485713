//! Local jets of a plane curve at a point: multiplicity and the node/cusp test.

use num_complex::Complex64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::TopologyError;
use crate::ed::normalize_projective;
use crate::poly::{
    Coefficient, ComplexPoint, ComplexPolynomial, ExactPolynomial, GaussianRational, Polynomial,
};

const JET_THRESHOLD: f64 = 1e-8;
const RATIONAL_DENOMINATOR: i64 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SingularityKind {
    Node,
    Cusp,
    UserSupplied,
}

/// A singular point of a plane curve with its local invariants.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveSingularity {
    pub location: ComplexPoint,
    pub multiplicity: u32,
    pub branch_count: u32,
    pub delta: u32,
    pub on_quadric: bool,
    pub on_hyperplane: bool,
    pub kind: SingularityKind,
}

impl CurveSingularity {
    pub fn node(location: ComplexPoint) -> Self {
        Self::with_invariants(location, SingularityKind::Node, 2, 2, 1)
    }

    pub fn cusp(location: ComplexPoint) -> Self {
        Self::with_invariants(location, SingularityKind::Cusp, 2, 1, 1)
    }

    pub fn with_invariants(
        location: ComplexPoint,
        kind: SingularityKind,
        multiplicity: u32,
        branch_count: u32,
        delta: u32,
    ) -> Self {
        Self {
            location,
            multiplicity,
            branch_count,
            delta,
            on_quadric: false,
            on_hyperplane: false,
            kind,
        }
    }

    /// Local Euler obstruction of a curve at this point: its multiplicity.
    pub fn euler_obstruction(&self) -> i64 {
        self.multiplicity as i64
    }
}

/// Taylor expansion of `F` at a point, in the two coordinates of the affine
/// chart where the point's largest coordinate is 1.
pub(crate) struct LocalJet {
    numeric: ComplexPolynomial,
    exact: Option<ExactPolynomial>,
}

/// Exact representative of `p` (scaled so `p[pivot] = 1`), if its
/// coordinates are small-denominator Gaussian rationals.
pub(crate) fn exact_point(p: &[Complex64]) -> Option<Vec<GaussianRational>> {
    p.iter()
        .map(|c| GaussianRational::approximate(*c, RATIONAL_DENOMINATOR, 1e-9))
        .collect()
}

fn pivot_index(p: &[Complex64]) -> usize {
    p.iter()
        .enumerate()
        .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
        .map(|(i, _)| i)
        .unwrap_or(0)
}

fn translate<C: Coefficient>(f: &Polynomial<C>, point: &[C], pivot: usize) -> Polynomial<C> {
    let mut local = 0;
    let images: Vec<Polynomial<C>> = (0..point.len())
        .map(|k| {
            if k == pivot {
                Polynomial::constant(2, C::one())
            } else {
                let img = Polynomial::constant(2, point[k].clone()).add(&Polynomial::variable(2, local));
                local += 1;
                img
            }
        })
        .collect();
    f.compose(&images).expect("three images for a plane curve")
}

impl LocalJet {
    pub(crate) fn at(f: &ExactPolynomial, p: &[Complex64]) -> Result<Self, TopologyError> {
        if f.nvars() != 3 || p.len() != 3 {
            return Err(TopologyError::NotPlaneCurve(f.nvars()));
        }
        let pivot = pivot_index(p);
        if p[pivot].norm() == 0.0 {
            return Err(TopologyError::NotOnCurve);
        }
        let q = normalize_projective(p);
        let exact = exact_point(&q)
            .filter(|e| f.evaluate_exact(e).map(|v| v.is_zero()).unwrap_or(false))
            .map(|e| translate(f, &e, pivot));
        let numeric = translate(&f.to_complex(), &q, pivot);
        Ok(Self { numeric, exact })
    }

    #[cfg(test)]
    pub(crate) fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    fn threshold(&self) -> f64 {
        JET_THRESHOLD * self.numeric.coefficient_norm()
    }

    fn component_is_zero(&self, degree: u32) -> bool {
        if let Some(e) = &self.exact {
            return e.homogeneous_component(degree).is_zero();
        }
        let t = self.threshold();
        self.numeric
            .homogeneous_component(degree)
            .terms()
            .all(|(_, c)| c.norm() <= t)
    }

    pub(crate) fn on_curve(&self) -> bool {
        self.component_is_zero(0)
    }

    /// Lowest order with a nonvanishing coefficient.
    pub(crate) fn order(&self) -> Option<u32> {
        let top = self.numeric.total_degree().unwrap_or(0);
        (0..=top).find(|&k| !self.component_is_zero(k))
    }

    fn coefficient(&self, exps: [u32; 2]) -> Complex64 {
        match &self.exact {
            Some(e) => e.coefficient(&exps).to_complex(),
            None => self.numeric.coefficient(&exps),
        }
    }

    fn exact_coefficient(&self, exps: [u32; 2]) -> Option<GaussianRational> {
        self.exact.as_ref().map(|e| e.coefficient(&exps))
    }

    /// Discriminant test on the quadratic part: two distinct tangents.
    fn has_distinct_tangents(&self) -> bool {
        if let (Some(a), Some(b), Some(c)) = (
            self.exact_coefficient([2, 0]),
            self.exact_coefficient([1, 1]),
            self.exact_coefficient([0, 2]),
        ) {
            let disc = b.clone() * b - GaussianRational::from_i64(4) * a * c;
            return !disc.is_zero();
        }
        let a = self.coefficient([2, 0]);
        let b = self.coefficient([1, 1]);
        let c = self.coefficient([0, 2]);
        let scale = a.norm().max(b.norm()).max(c.norm());
        (b * b - a * c * 4.0).norm() > JET_THRESHOLD * scale * scale
    }

    /// For a double tangent line, whether the cubic part is nonzero along it.
    fn cubic_transverse_to_tangent(&self) -> bool {
        let a = self.coefficient([2, 0]);
        let b = self.coefficient([1, 1]);
        let c = self.coefficient([0, 2]);
        let dir = if a.norm() >= c.norm() {
            [-b, a * 2.0]
        } else {
            [c * 2.0, -b]
        };
        if let Some(e) = &self.exact {
            let (ea, eb, ec) = (
                e.coefficient(&[2, 0]),
                e.coefficient(&[1, 1]),
                e.coefficient(&[0, 2]),
            );
            let two = GaussianRational::from_i64(2);
            let edir = if a.norm() >= c.norm() {
                [-eb, two * ea]
            } else {
                [two * ec, -eb]
            };
            let v = e.homogeneous_component(3).evaluate_exact(&edir).expect("two coordinates");
            return !v.is_zero();
        }
        let cubic = self.numeric.homogeneous_component(3);
        let dir_norm = (dir[0].norm_sqr() + dir[1].norm_sqr()).sqrt();
        let v = cubic.evaluate(&dir).expect("two coordinates");
        v.norm() > JET_THRESHOLD * cubic.coefficient_norm().max(self.threshold()) * dir_norm.powi(3)
    }
}

/// Multiplicity of the plane curve `{F = 0}` at `p`.
pub fn multiplicity_at(f: &ExactPolynomial, p: &[Complex64]) -> Result<u32, TopologyError> {
    let jet = LocalJet::at(f, p)?;
    if !jet.on_curve() {
        return Err(TopologyError::NotOnCurve);
    }
    jet.order().ok_or(TopologyError::VanishingJets)
}

/// Recognises ordinary nodes and ordinary cusps among double points.
pub fn classify_singularity(f: &ExactPolynomial, p: &[Complex64]) -> Result<CurveSingularity, TopologyError> {
    let jet = LocalJet::at(f, p)?;
    if !jet.on_curve() {
        return Err(TopologyError::NotOnCurve);
    }
    let m = jet.order().ok_or(TopologyError::VanishingJets)?;
    let location = normalize_projective(p);
    match m {
        1 => Err(TopologyError::NotSingular),
        2 if jet.has_distinct_tangents() => Ok(CurveSingularity::node(location)),
        2 if jet.cubic_transverse_to_tangent() => Ok(CurveSingularity::cusp(location)),
        2 => Err(TopologyError::UnsupportedSingularity {
            point: format_point(&location),
            reason: "double point that is neither a node nor a cusp".into(),
        }),
        m => Err(TopologyError::UnsupportedSingularity {
            point: format_point(&location),
            reason: format!("multiplicity {m} > 2"),
        }),
    }
}

pub(crate) fn format_point(p: &[Complex64]) -> String {
    let parts: Vec<String> = p
        .iter()
        .map(|c| {
            let re = if c.re.abs() < 1e-12 { 0.0 } else { c.re };
            let im = if c.im.abs() < 1e-12 { 0.0 } else { c.im };
            match (re == 0.0, im == 0.0) {
                (_, true) => format!("{re}"),
                (true, false) => format!("{im}*i"),
                _ => format!("{re}{:+}*i", im),
            }
        })
        .collect();
    format!("[{}]", parts.join(":"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn curve(text: &str) -> ExactPolynomial {
        parse_polynomial(text, &["x0", "x1", "x2"]).unwrap()
    }

    fn pt(v: [(f64, f64); 3]) -> Vec<Complex64> {
        v.iter().map(|&(a, b)| Complex64::new(a, b)).collect()
    }

    #[test]
    fn nodal_cubic_has_multiplicity_two_at_origin() {
        let f = curve("x0^2*x2 - x1^2*(x1+x2)");
        assert_eq!(multiplicity_at(&f, &pt([(0., 0.), (0., 0.), (1., 0.)])).unwrap(), 2);
    }

    #[test]
    fn smooth_point_has_multiplicity_one() {
        let f = curve("x0^2*x2 - x1^2*(x1+x2)");
        // x1 = 1, x2 = 1 gives x0^2 = 2: an irrational point, numeric path
        let p = pt([(2f64.sqrt(), 0.), (1., 0.), (1., 0.)]);
        let jet = LocalJet::at(&f, &p).unwrap();
        assert!(!jet.is_exact());
        assert_eq!(multiplicity_at(&f, &p).unwrap(), 1);
        // [1:0:0] is rational and on the curve
        assert_eq!(multiplicity_at(&f, &pt([(1., 0.), (0., 0.), (0., 0.)])).unwrap(), 1);
    }

    #[test]
    fn cuspidal_cubic_has_multiplicity_two() {
        let f = curve("x0^3 - x1^2*x2");
        let p = pt([(0., 0.), (0., 0.), (1., 0.)]);
        assert_eq!(multiplicity_at(&f, &p).unwrap(), 2);
        assert_eq!(classify_singularity(&f, &p).unwrap().kind, SingularityKind::Cusp);
    }

    #[test]
    fn nodes_of_example_cubics() {
        let p = pt([(0., 0.), (0., 0.), (1., 0.)]);
        for text in ["x0^2*x2 - x1^2*(x1+x2)", "x0^3 - (i*x0^2 + x1^2)*x2"] {
            let s = classify_singularity(&curve(text), &p).unwrap();
            assert_eq!(s.kind, SingularityKind::Node);
            assert_eq!((s.multiplicity, s.branch_count, s.delta), (2, 2, 1));
            assert_eq!(s.euler_obstruction(), 2);
        }
    }

    #[test]
    fn node_on_the_quadric_is_found_exactly() {
        let f = curve("x0^2*x1 - (x1 - i*x2)^2*x2");
        let p = pt([(0., 0.), (1., 0.), (0., -1.)]);
        let jet = LocalJet::at(&f, &p).unwrap();
        assert!(jet.is_exact());
        assert_eq!(classify_singularity(&f, &p).unwrap().kind, SingularityKind::Node);
    }

    #[test]
    fn irrational_point_uses_numeric_jet() {
        let f = curve("(x1^2 - 2*x0^2)*x2 + x2^3 - (x1^2-2*x0^2)*x0 + x2^2*x0");
        let p = pt([(1., 0.), (2f64.sqrt(), 0.), (0., 0.)]);
        let jet = LocalJet::at(&f, &p).unwrap();
        assert!(!jet.is_exact());
        assert!(jet.on_curve());
    }

    #[test]
    fn error_paths() {
        let f = curve("x0^2*x2 - x1^2*(x1+x2)");
        assert!(matches!(
            multiplicity_at(&f, &pt([(1., 0.), (1., 0.), (1., 0.)])),
            Err(TopologyError::NotOnCurve)
        ));
        let triple = curve("x0^3 - x1^3");
        assert!(matches!(
            classify_singularity(&triple, &pt([(0., 0.), (0., 0.), (1., 0.)])),
            Err(TopologyError::UnsupportedSingularity { .. })
        ));
        // tacnode y^2 = x^4 (in the chart x2 = 1): double point, not a node or cusp
        let tacnode = curve("x1^2*x2^2 - x0^4");
        assert!(matches!(
            classify_singularity(&tacnode, &pt([(0., 0.), (0., 0.), (1., 0.)])),
            Err(TopologyError::UnsupportedSingularity { .. })
        ));
        let smooth = curve("x0*x2 - x1^2");
        assert!(matches!(
            classify_singularity(&smooth, &pt([(0., 0.), (0., 0.), (1., 0.)])),
            Err(TopologyError::NotSingular)
        ));
    }

    #[test]
    fn multiplicity_is_additive_for_two_lines() {
        let f = curve("(x0 + 2*x1 - 3*x2)*(5*x0 - x1 + 7*x2)");
        // intersection of the lines: cross product of (1,2,-3) and (5,-1,7)
        let p = pt([(11., 0.), (-22., 0.), (-11., 0.)]);
        assert_eq!(multiplicity_at(&f, &p).unwrap(), 2);
        assert_eq!(classify_singularity(&f, &p).unwrap().kind, SingularityKind::Node);
    }
}
