//! Builders for the critical-point and intersection systems.

use super::generic::{linear_form, GenericData};
use super::EdError;
use crate::homotopy::PolynomialSystem;
use crate::poly::{Coefficient, ExactPolynomial, GaussianRational};

use num_traits::One;

fn check_hypersurface(f: &ExactPolynomial, g: &GenericData) -> Result<u32, EdError> {
    let (d, homogeneous) = f.degree_and_homogeneity()?;
    if !homogeneous {
        return Err(EdError::NonHomogeneous);
    }
    if d == 0 {
        return Err(EdError::ConstantPolynomial);
    }
    if f.nvars() != g.beta.len() {
        return Err(EdError::VariableCount {
            expected: g.beta.len(),
            got: f.nvars(),
        });
    }
    Ok(d)
}

/// Adds `extra` trailing variables to `p`.
pub(crate) fn extend(p: &ExactPolynomial, extra: usize) -> ExactPolynomial {
    let n = p.nvars();
    let images: Vec<_> = (0..n)
        .map(|i| ExactPolynomial::variable(n + extra, i))
        .collect();
    p.compose(&images).expect("image count matches")
}

fn coordinate_names(n_plus_one: usize) -> Vec<String> {
    (0..n_plus_one).map(|i| format!("x{i}")).collect()
}

/// The isotropic quadric `Σ x_i²` in `nvars` variables.
pub fn isotropic_quadric(nvars: usize) -> ExactPolynomial {
    (0..nvars).fold(ExactPolynomial::zero(nvars), |acc, i| {
        acc.add(&ExactPolynomial::variable(nvars, i).pow(2))
    })
}

/// Lagrange conditions for a critical point of `Σ(x_i - β_i)²` on the cone
/// `{F = 0}`: unknowns `(x_0..x_n, λ)`, equations
/// `F = 0` and `x_i - β_i - λ·∂F/∂x_i = 0`.
pub fn build_cone_critical_system(
    f: &ExactPolynomial,
    g: &GenericData,
) -> Result<PolynomialSystem, EdError> {
    check_hypersurface(f, g)?;
    let m = f.nvars();
    let total = m + 1;
    let lambda = ExactPolynomial::variable(total, m);
    let mut equations = vec![extend(f, 1)];
    for (i, partial) in f.gradient().iter().enumerate() {
        let eq = ExactPolynomial::variable(total, i)
            .sub(&ExactPolynomial::constant(total, g.beta[i].clone()))
            .sub(&lambda.mul(&extend(partial, 1)));
        equations.push(eq);
    }
    let mut names = coordinate_names(m);
    names.push("lambda".into());
    Ok(PolynomialSystem::new(equations, names)?)
}

/// Lagrange conditions for a critical point of `l_β` on
/// `Y = {F = 0} ∩ {Σ x_i² = 1}`: unknowns `(x_0..x_n, λ, μ)`, equations
/// `F = 0`, `Σx_i² - 1 = 0` and `β_i - λ·∂F/∂x_i - 2μ·x_i = 0`.
pub fn build_double_cover_system(
    f: &ExactPolynomial,
    g: &GenericData,
) -> Result<PolynomialSystem, EdError> {
    check_hypersurface(f, g)?;
    let m = f.nvars();
    let total = m + 2;
    let lambda = ExactPolynomial::variable(total, m);
    let mu = ExactPolynomial::variable(total, m + 1);
    let two = ExactPolynomial::constant(total, GaussianRational::from_i64(2));
    let sphere = extend(&isotropic_quadric(m), 2)
        .sub(&ExactPolynomial::constant(total, GaussianRational::one()));
    let mut equations = vec![extend(f, 2), sphere];
    for (i, partial) in f.gradient().iter().enumerate() {
        let eq = ExactPolynomial::constant(total, g.beta[i].clone())
            .sub(&lambda.mul(&extend(partial, 2)))
            .sub(&two.mul(&mu).mul(&ExactPolynomial::variable(total, i)));
        equations.push(eq);
    }
    let mut names = coordinate_names(m);
    names.push("lambda".into());
    names.push("mu".into());
    Ok(PolynomialSystem::new(equations, names)?)
}

/// `{polys = 0, chart(x) = 1}`, with the polynomials replaced by random
/// combinations when there are more than `n` of them.
pub fn build_intersection_system(
    polys: &[ExactPolynomial],
    chart: &[GaussianRational],
    mixing: &[Vec<GaussianRational>],
) -> Result<PolynomialSystem, EdError> {
    let m = chart.len();
    if let Some(p) = polys.iter().find(|p| p.nvars() != m) {
        return Err(EdError::VariableCount {
            expected: m,
            got: p.nvars(),
        });
    }
    let n = m - 1;
    let equations: Vec<ExactPolynomial> = if polys.len() <= n {
        polys.to_vec()
    } else {
        mixing
            .iter()
            .take(n)
            .map(|row| {
                row.iter()
                    .zip(polys)
                    .fold(ExactPolynomial::zero(m), |acc, (c, p)| acc.add(&p.scale(c)))
            })
            .collect()
    };
    if equations.len() < n {
        return Err(EdError::PositiveDimensional(format!(
            "{} equations cannot cut a finite set in {n}-dimensional projective space",
            polys.len()
        )));
    }
    let mut all = equations;
    all.push(linear_form(chart).sub(&ExactPolynomial::constant(m, GaussianRational::one())));
    Ok(PolynomialSystem::new(all, coordinate_names(m))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ed::sample_generic_beta;
    use crate::poly::parse_polynomial;

    fn vars(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("x{i}")).collect()
    }

    #[test]
    fn nodal_cubic_cone_system_shape() {
        let f = parse_polynomial("x0^2*x2 - x1^2*(x1+x2)", &vars(3)).unwrap();
        let g = sample_generic_beta(2, 1, false).unwrap();
        let sys = build_cone_critical_system(&f, &g).unwrap();
        assert_eq!(sys.len(), 4);
        assert_eq!(sys.nvars(), 4);
        assert_eq!(sys.degrees(), vec![3, 3, 3, 3]);
        assert_eq!(sys.bezout_number(), 81);
    }

    #[test]
    fn whitney_surface_systems_shape() {
        let f = parse_polynomial("x0^2*x1 - x2*x3^2", &vars(4)).unwrap();
        let g = sample_generic_beta(3, 1, false).unwrap();
        let cone = build_cone_critical_system(&f, &g).unwrap();
        assert_eq!((cone.len(), cone.nvars()), (5, 5));
        assert_eq!(cone.bezout_number(), 243);
        let cover = build_double_cover_system(&f, &g).unwrap();
        assert_eq!((cover.len(), cover.nvars()), (6, 6));
    }

    #[test]
    fn nodal_cubic_cover_system_shape() {
        let f = parse_polynomial("x0^2*x2 - x1^2*(x1+x2)", &vars(3)).unwrap();
        let g = sample_generic_beta(2, 1, false).unwrap();
        let sys = build_double_cover_system(&f, &g).unwrap();
        assert_eq!((sys.len(), sys.nvars()), (5, 5));
        assert_eq!(sys.names()[3..], ["lambda".to_string(), "mu".to_string()]);
    }

    #[test]
    fn hyperplane_cone_system_is_linear() {
        let f = parse_polynomial("x0 + 2*x1 + 3*x2", &vars(3)).unwrap();
        let g = sample_generic_beta(2, 1, false).unwrap();
        let sys = build_cone_critical_system(&f, &g).unwrap();
        assert_eq!(sys.degrees(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn rejects_inhomogeneous_input() {
        let f = parse_polynomial("x0^2 + x1", &vars(3)).unwrap();
        let g = sample_generic_beta(2, 1, false).unwrap();
        assert!(matches!(build_cone_critical_system(&f, &g), Err(EdError::NonHomogeneous)));
        assert!(matches!(build_double_cover_system(&f, &g), Err(EdError::NonHomogeneous)));
    }

    #[test]
    fn cone_system_vanishes_at_a_constructed_critical_point() {
        // For the plane x0 + 2x1 + 3x2 = 0 the orthogonal projection of β is
        // the unique critical point, with λ = -<β,c>/|c|².
        let f = parse_polynomial("x0 + 2*x1 + 3*x2", &vars(3)).unwrap();
        let g = sample_generic_beta(2, 4, false).unwrap();
        let b = g.beta_complex();
        let c = [1.0, 2.0, 3.0];
        let dot: num_complex::Complex64 = b.iter().zip(c).map(|(bi, ci)| bi * ci).sum();
        let lambda = -dot / 14.0;
        let mut x: Vec<_> = b.iter().zip(c).map(|(bi, ci)| bi + lambda * ci).collect();
        x.push(lambda);
        let sys = build_cone_critical_system(&f, &g).unwrap();
        assert!(sys.evaluate(&x).iter().all(|v| v.norm() < 1e-12));
    }
}
