use std::f64::consts::TAU;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::system::{CompiledSystem, PolynomialSystem};
use super::HomotopyError;
use crate::poly::ComplexPoint;

/// The start system `x_i^{d_i} - c_i = 0`.
#[derive(Clone, Debug)]
pub struct StartSystem {
    pub degrees: Vec<u32>,
    pub constants: Vec<Complex64>,
}

impl StartSystem {
    pub fn num_solutions(&self) -> u64 {
        self.degrees.iter().map(|&d| d as u64).product()
    }

    /// Every combination of `d_i`-th roots of `c_i`, in mixed-radix order.
    pub fn solutions(&self) -> Vec<ComplexPoint> {
        let roots: Vec<Vec<Complex64>> = self
            .degrees
            .iter()
            .zip(&self.constants)
            .map(|(&d, &c)| {
                let r = c.norm().powf(1.0 / d as f64);
                let theta = c.arg() / d as f64;
                (0..d)
                    .map(|k| Complex64::from_polar(r, theta + TAU * k as f64 / d as f64))
                    .collect()
            })
            .collect();
        let total = self.num_solutions() as usize;
        let mut out = Vec::with_capacity(total);
        let mut digits = vec![0usize; roots.len()];
        for _ in 0..total {
            out.push(digits.iter().zip(&roots).map(|(&k, r)| r[k]).collect());
            for (digit, r) in digits.iter_mut().zip(&roots).rev() {
                *digit += 1;
                if *digit < r.len() {
                    break;
                }
                *digit = 0;
            }
        }
        out
    }

    pub fn evaluate(&self, x: &[Complex64]) -> Vec<Complex64> {
        x.iter()
            .zip(self.degrees.iter().zip(&self.constants))
            .map(|(xi, (&d, &c))| xi.powu(d) - c)
            .collect()
    }

    /// Homogenized values and Jacobian at `z = (x, h)`.
    fn homogeneous(&self, z: &[Complex64]) -> (Vec<Complex64>, Vec<(Complex64, Complex64)>) {
        let k = self.degrees.len();
        let zh = z[k];
        let mut vals = Vec::with_capacity(k);
        let mut derivs = Vec::with_capacity(k);
        for i in 0..k {
            let d = self.degrees[i];
            let c = self.constants[i];
            vals.push(z[i].powu(d) - c * zh.powu(d));
            derivs.push((
                z[i].powu(d - 1) * d as f64,
                -c * zh.powu(d - 1) * d as f64,
            ));
        }
        (vals, derivs)
    }
}

/// `H(z, s) = γ·s·G(z) + (1 - s)·F(z)` on projective space, with `s = 1 - t`,
/// restricted to the affine patch `a·z = 1`.
///
/// Working in `s` keeps resolution near the target end `t = 1`.
#[derive(Clone, Debug)]
pub struct Homotopy {
    pub(crate) target: CompiledSystem,
    pub(crate) target_affine: CompiledSystem,
    start: StartSystem,
    gamma: Complex64,
    patch: Vec<Complex64>,
    coefficient_norm: f64,
}

pub(crate) struct HomotopyEval {
    pub values: DVector<Complex64>,
    pub jacobian: DMatrix<Complex64>,
    pub ds: DVector<Complex64>,
}

impl Homotopy {
    pub fn start_system(&self) -> &StartSystem {
        &self.start
    }

    pub fn gamma(&self) -> Complex64 {
        self.gamma
    }

    pub fn unknowns(&self) -> usize {
        self.start.degrees.len()
    }

    pub fn coefficient_norm(&self) -> f64 {
        self.coefficient_norm
    }

    /// Lifts an affine point to the patch.
    pub(crate) fn lift(&self, x: &[Complex64]) -> Vec<Complex64> {
        let mut z: Vec<Complex64> = x.to_vec();
        z.push(Complex64::new(1.0, 0.0));
        let dot: Complex64 = z.iter().zip(&self.patch).map(|(a, b)| a * b).sum();
        z.iter().map(|v| v / dot).collect()
    }

    pub(crate) fn eval(&self, z: &[Complex64], s: f64) -> HomotopyEval {
        let k = self.unknowns();
        let (fv, fj) = self.target.values_and_jacobian(z);
        let (gv, gd) = self.start.homogeneous(z);
        let mut values = DVector::zeros(k + 1);
        let mut jacobian = DMatrix::zeros(k + 1, k + 1);
        let mut ds = DVector::zeros(k + 1);
        let gs = self.gamma * s;
        let t = 1.0 - s;
        for i in 0..k {
            values[i] = gs * gv[i] + fv[i] * t;
            ds[i] = self.gamma * gv[i] - fv[i];
            for j in 0..=k {
                jacobian[(i, j)] = fj[(i, j)] * t;
            }
            jacobian[(i, i)] += gs * gd[i].0;
            jacobian[(i, k)] += gs * gd[i].1;
        }
        let dot: Complex64 = z.iter().zip(&self.patch).map(|(a, b)| a * b).sum();
        values[k] = dot - Complex64::new(1.0, 0.0);
        for j in 0..=k {
            jacobian[(k, j)] = self.patch[j];
        }
        HomotopyEval {
            values,
            jacobian,
            ds,
        }
    }
}

pub(crate) fn random_unit(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::from_polar(1.0, rng.random::<f64>() * TAU)
}

/// Builds the total-degree start system and the gamma-trick homotopy for a
/// square `system`, returning the homotopy and its `Π d_i` start points.
pub fn total_degree_start(
    system: &PolynomialSystem,
    seed: u64,
) -> Result<(Homotopy, Vec<ComplexPoint>), HomotopyError> {
    if !system.is_square() {
        return Err(HomotopyError::NonSquare {
            equations: system.len(),
            unknowns: system.nvars(),
        });
    }
    if let Some(idx) = system.equations().iter().position(|p| p.is_zero()) {
        return Err(HomotopyError::ZeroEquation(idx));
    }
    if let Some(idx) = system
        .equations()
        .iter()
        .position(|p| p.total_degree() == Some(0))
    {
        return Err(HomotopyError::ConstantEquation(idx));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let degrees = system.degrees();
    let constants = degrees.iter().map(|_| random_unit(&mut rng)).collect();
    let gamma = random_unit(&mut rng);
    let patch = (0..=system.nvars())
        .map(|_| {
            Complex64::new(
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
            )
        })
        .collect();
    let homogenized: Vec<_> = system.equations().iter().map(|p| p.homogenize()).collect();
    let start = StartSystem { degrees, constants };
    let points = start.solutions();
    Ok((
        Homotopy {
            target: CompiledSystem::new(&homogenized),
            target_affine: CompiledSystem::new(system.equations()),
            start,
            gamma,
            patch,
            coefficient_norm: system.coefficient_norm(),
        },
        points,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn system(texts: &[&str], vars: &[&str]) -> PolynomialSystem {
        PolynomialSystem::new(
            texts
                .iter()
                .map(|t| parse_polynomial(t, vars).unwrap())
                .collect(),
            vars.iter().map(|v| v.to_string()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn quadratic_has_two_start_points() {
        let (h, pts) = total_degree_start(&system(&["x^2 - 1"], &["x"]), 3).unwrap();
        assert_eq!(pts.len(), 2);
        for p in &pts {
            assert!(h.start_system().evaluate(p)[0].norm() < 1e-12);
        }
        assert!((pts[0][0] - pts[1][0]).norm() > 1.0);
    }

    #[test]
    fn linear_has_one_start_point() {
        let (_, pts) = total_degree_start(&system(&["x - 5"], &["x"]), 3).unwrap();
        assert_eq!(pts.len(), 1);
    }

    #[test]
    fn start_points_are_distinct_roots() {
        let (h, pts) = total_degree_start(&system(&["x^3 - y", "y^2 - x"], &["x", "y"]), 11).unwrap();
        assert_eq!(pts.len(), 6);
        for (a, p) in pts.iter().enumerate() {
            assert!(h.start_system().evaluate(p).iter().all(|v| v.norm() < 1e-12));
            for q in &pts[a + 1..] {
                let d: f64 = p.iter().zip(q).map(|(u, v)| (u - v).norm()).sum();
                assert!(d > 0.1);
            }
        }
    }

    #[test]
    fn rejects_bad_systems() {
        assert!(matches!(
            total_degree_start(&system(&["x + y"], &["x", "y"]), 0),
            Err(HomotopyError::NonSquare { equations: 1, unknowns: 2 })
        ));
        assert!(matches!(
            total_degree_start(&system(&["x", "0"], &["x", "y"]), 0),
            Err(HomotopyError::ZeroEquation(1))
        ));
    }

    #[test]
    fn homotopy_jacobian_matches_finite_differences() {
        let (h, _) = total_degree_start(&system(&["x^2*y - 2", "x + i*y^3"], &["x", "y"]), 5).unwrap();
        let z = vec![
            Complex64::new(0.3, 0.1),
            Complex64::new(-0.4, 0.8),
            Complex64::new(0.6, -0.2),
        ];
        let s = 0.37;
        let e = h.eval(&z, s);
        let eps = 1e-7;
        for col in 0..3 {
            let mut zp = z.clone();
            zp[col] += eps;
            let ep = h.eval(&zp, s);
            for row in 0..3 {
                let fd = (ep.values[row] - e.values[row]) / eps;
                assert!((fd - e.jacobian[(row, col)]).norm() < 1e-5);
            }
        }
        let es = h.eval(&z, s + eps);
        for row in 0..2 {
            let fd = (es.values[row] - e.values[row]) / eps;
            assert!((fd - e.ds[row]).norm() < 1e-5);
        }
    }
}
