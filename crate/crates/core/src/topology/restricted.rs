//! Euler characteristic of the Euler obstruction restricted to the
//! complement of the isotropic quadric and a generic hyperplane.

use serde::{Deserialize, Serialize};

use super::local::{exact_point, format_point};
use super::{
    classify_singularity, euler_characteristic_curve, CurveSingularity, SingularityKind,
    TopologyError, UserSingularity,
};
use crate::ed::{
    contained_in_isotropic_quadric, count_distinct_projective_intersection,
    find_projective_singular_points, hyperplane_value, isotropic_quadric, projective_distance,
    relative_value, CountOptions, EdError, GenericData, GenericSummary, FLAG_POINT_ON_HBETA,
};
use crate::homotopy::TrackerConfig;
use crate::poly::{ExactPolynomial, GaussianRational};

const USER_MATCH: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TopologyReport {
    pub degree: u32,
    pub chi_x: i64,
    /// Distinct points of `X ∩ Q`.
    pub count_xq: usize,
    /// Distinct points of `X ∩ H_β`.
    pub count_xh: usize,
    pub singularities: Vec<CurveSingularity>,
    /// `χ(X ∩ U)` with `U` the complement of `Q ∪ H_β`.
    pub chi_x_u: i64,
    pub chi_eu_restricted: i64,
    pub ped_topological: i64,
    pub attempts: usize,
    pub generic: GenericSummary,
}

fn on_quadric(q: &ExactPolynomial, p: &[num_complex::Complex64], tol: f64) -> bool {
    if let Some(e) = exact_point(p) {
        let v: GaussianRational = q.evaluate_exact(&e).expect("three coordinates");
        if num_traits::Zero::is_zero(&v) {
            return true;
        }
    }
    relative_value(&q.to_complex(), p) <= tol
}

fn local_invariants(
    f: &ExactPolynomial,
    points: &[Vec<num_complex::Complex64>],
    user: &[UserSingularity],
) -> Result<Vec<CurveSingularity>, TopologyError> {
    for u in user {
        if !points.iter().any(|p| projective_distance(p, &u.point) < USER_MATCH) {
            return Err(TopologyError::UnmatchedSingularity(format_point(&u.point)));
        }
    }
    points
        .iter()
        .map(|p| {
            match user
                .iter()
                .find(|u| projective_distance(p, &u.point) < USER_MATCH)
            {
                Some(u) => Ok(CurveSingularity::with_invariants(
                    p.clone(),
                    SingularityKind::UserSupplied,
                    u.multiplicity,
                    u.branch_count,
                    u.delta,
                )),
                None => classify_singularity(f, p),
            }
        })
        .collect()
}

/// Computes `χ(Eu_X|_U)` for a reduced irreducible plane curve `X = {F = 0}`,
/// where `U = ℙ² \ (Q ∪ H_β)`, together with the intermediate counts.
///
/// Singular points come from the solver and are classified as nodes or cusps;
/// anything else needs an entry in `user`. A random `β` is redrawn when `H_β`
/// passes through a point of `X ∩ Q` or a singular point.
pub fn chi_eu_restricted(
    f: &ExactPolynomial,
    g: &GenericData,
    config: &TrackerConfig,
    opts: &CountOptions,
    user: &[UserSingularity],
) -> Result<TopologyReport, TopologyError> {
    if f.nvars() != 3 || g.beta.len() != 3 {
        return Err(TopologyError::NotPlaneCurve(f.nvars()));
    }
    let (degree, homogeneous) = f.degree_and_homogeneity()?;
    if !homogeneous {
        return Err(EdError::NonHomogeneous.into());
    }
    if degree == 0 {
        return Err(EdError::ConstantPolynomial.into());
    }
    if contained_in_isotropic_quadric(f) {
        return Err(EdError::ContainedInQuadric.into());
    }

    let q = isotropic_quadric(3);
    let sing_points = find_projective_singular_points(f, g, config, opts)?;
    let mut singularities = local_invariants(f, &sing_points, user)?;
    for s in &mut singularities {
        s.on_quadric = on_quadric(&q, &s.location, opts.incidence_tolerance);
    }
    let chi_x = euler_characteristic_curve(degree, &singularities)?;
    let xq = count_distinct_projective_intersection(&[f.clone(), q], g, config, opts)?;

    let mut history = Vec::new();
    let mut data = g.clone();
    for attempt in 0..=opts.max_retries {
        let beta = data.beta_complex();
        let touches = |p: &Vec<num_complex::Complex64>| {
            hyperplane_value(&beta, p) <= opts.incidence_tolerance
        };
        if xq.witnesses.iter().any(touches) || sing_points.iter().any(touches) {
            history.push(format!("attempt {}: {FLAG_POINT_ON_HBETA}", attempt + 1));
            if data.fixed_beta {
                break;
            }
            data = g.resample(attempt as u64 + 1);
            continue;
        }
        let xh = count_distinct_projective_intersection(&[f.clone(), data.l_beta()], &data, config, opts)?;
        let chi_x_u = chi_x - xq.count as i64 - xh.count as i64;
        let correction: i64 = singularities
            .iter()
            .filter(|s| !s.on_quadric)
            .map(|s| s.euler_obstruction() - 1)
            .sum();
        let chi_eu = chi_x_u + correction;
        return Ok(TopologyReport {
            degree,
            chi_x,
            count_xq: xq.count,
            count_xh: xh.count,
            singularities,
            chi_x_u,
            chi_eu_restricted: chi_eu,
            ped_topological: -chi_eu,
            attempts: attempt + 1,
            generic: GenericSummary::from(&data),
        });
    }
    Err(EdError::Genericity {
        attempts: history.len(),
        flags: history,
    }
    .into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ed::sample_generic_beta;
    use crate::poly::{parse_constant, parse_polynomial};

    fn run(text: &str, seed: u64) -> Result<TopologyReport, TopologyError> {
        let f = parse_polynomial(text, &["x0", "x1", "x2"]).unwrap();
        let g = sample_generic_beta(2, seed, false).unwrap();
        chi_eu_restricted(&f, &g, &TrackerConfig::with_seed(seed), &CountOptions::default(), &[])
    }

    #[test]
    fn smooth_conic() {
        let r = run("x0^2 + 2*x1^2 + 5*x2^2", 1).unwrap();
        assert_eq!((r.chi_x, r.count_xq, r.count_xh), (2, 4, 2));
        assert_eq!(r.ped_topological, 4);
    }

    #[test]
    fn line() {
        let r = run("x0 + 2*x1 + 3*x2", 1).unwrap();
        assert_eq!((r.chi_x, r.count_xq, r.count_xh), (2, 2, 1));
        assert_eq!(r.ped_topological, 1);
    }

    #[test]
    fn nodal_cubic_off_the_quadric() {
        let r = run("x0^2*x2 - x1^2*(x1+x2)", 2).unwrap();
        assert_eq!(r.singularities.len(), 1);
        assert!(!r.singularities[0].on_quadric);
        assert_eq!((r.chi_x, r.count_xq, r.count_xh), (1, 6, 3));
        assert_eq!(r.ped_topological, 7);
    }

    #[test]
    fn fixed_beta_on_a_singular_point_is_rejected() {
        let f = parse_polynomial("x0^2*x2 - x1^2*(x1+x2)", &["x0", "x1", "x2"]).unwrap();
        // l_β = x0 + x1 passes through the node [0:0:1]
        let beta = ["1", "1", "0"].iter().map(|s| parse_constant(s).unwrap()).collect();
        let g = GenericData::with_beta(beta, 1).unwrap();
        let err = chi_eu_restricted(&f, &g, &TrackerConfig::default(), &CountOptions::default(), &[]);
        assert!(matches!(err, Err(TopologyError::Ed(EdError::Genericity { .. }))));
    }

    #[test]
    fn unmatched_user_point_is_an_error() {
        let f = parse_polynomial("x0^2*x2 - x1^2*(x1+x2)", &["x0", "x1", "x2"]).unwrap();
        let g = sample_generic_beta(2, 1, false).unwrap();
        let user = vec![UserSingularity {
            point: vec![1.0.into(), 0.0.into(), 0.0.into()],
            multiplicity: 2,
            branch_count: 2,
            delta: 1,
        }];
        let err = chi_eu_restricted(&f, &g, &TrackerConfig::default(), &CountOptions::default(), &user);
        assert!(matches!(err, Err(TopologyError::UnmatchedSingularity(_))));
    }
}
