use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::HomotopyError;
use crate::poly::{Coefficient, ExactPolynomial, Polynomial};

/// List of polynomials over one shared set of unknowns.
#[derive(Clone, Debug, PartialEq)]
pub struct PolynomialSystem {
    nvars: usize,
    equations: Vec<ExactPolynomial>,
    names: Vec<String>,
}

impl PolynomialSystem {
    pub fn new(equations: Vec<ExactPolynomial>, names: Vec<String>) -> Result<Self, HomotopyError> {
        let nvars = names.len();
        if let Some((idx, p)) = equations.iter().enumerate().find(|(_, p)| p.nvars() != nvars) {
            return Err(HomotopyError::VariableCount {
                equation: idx,
                expected: nvars,
                got: p.nvars(),
            });
        }
        Ok(Self {
            nvars,
            equations,
            names,
        })
    }

    /// Unknowns named `x0, x1, ...`.
    pub fn with_default_names(equations: Vec<ExactPolynomial>) -> Result<Self, HomotopyError> {
        let nvars = equations.first().map(|p| p.nvars()).unwrap_or(0);
        Self::new(equations, (0..nvars).map(|i| format!("x{i}")).collect())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.equations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn is_square(&self) -> bool {
        self.equations.len() == self.nvars
    }

    pub fn equations(&self) -> &[ExactPolynomial] {
        &self.equations
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Total degree of each equation (0 for the zero polynomial).
    pub fn degrees(&self) -> Vec<u32> {
        self.equations
            .iter()
            .map(|p| p.total_degree().unwrap_or(0))
            .collect()
    }

    pub fn bezout_number(&self) -> u64 {
        self.degrees().iter().map(|&d| d as u64).product()
    }

    /// Largest coefficient modulus over all equations.
    pub fn coefficient_norm(&self) -> f64 {
        self.equations
            .iter()
            .map(ExactPolynomial::coefficient_norm)
            .fold(0.0, f64::max)
    }

    pub fn evaluate(&self, x: &[Complex64]) -> Vec<Complex64> {
        CompiledSystem::new(&self.equations).values(x)
    }
}

/// Polynomial flattened to `(coefficient, exponents)` pairs for fast
/// repeated evaluation.
#[derive(Clone, Debug)]
pub(crate) struct CompiledPolynomial {
    terms: Vec<(Complex64, Vec<u32>)>,
}

impl CompiledPolynomial {
    pub(crate) fn new<C: Coefficient>(p: &Polynomial<C>) -> Self {
        Self {
            terms: p
                .terms()
                .map(|(m, c)| (c.to_complex(), m.exponents().to_vec()))
                .collect(),
        }
    }

    fn max_exponent(&self) -> u32 {
        self.terms
            .iter()
            .flat_map(|(_, e)| e.iter().copied())
            .max()
            .unwrap_or(0)
    }
}

/// A square-or-not system compiled for evaluation with Jacobian.
#[derive(Clone, Debug)]
pub(crate) struct CompiledSystem {
    polys: Vec<CompiledPolynomial>,
    nvars: usize,
    max_exp: usize,
}

impl CompiledSystem {
    pub(crate) fn new<C: Coefficient>(equations: &[Polynomial<C>]) -> Self {
        let polys: Vec<_> = equations.iter().map(CompiledPolynomial::new).collect();
        let nvars = equations.first().map(|p| p.nvars()).unwrap_or(0);
        let max_exp = polys.iter().map(|p| p.max_exponent()).max().unwrap_or(0) as usize;
        Self {
            polys,
            nvars,
            max_exp,
        }
    }

    fn powers(&self, x: &[Complex64]) -> Vec<Vec<Complex64>> {
        x.iter()
            .map(|&xi| {
                let mut row = Vec::with_capacity(self.max_exp + 1);
                let mut acc = Complex64::new(1.0, 0.0);
                row.push(acc);
                for _ in 0..self.max_exp {
                    acc *= xi;
                    row.push(acc);
                }
                row
            })
            .collect()
    }

    pub(crate) fn values(&self, x: &[Complex64]) -> Vec<Complex64> {
        debug_assert_eq!(x.len(), self.nvars);
        let pw = self.powers(x);
        self.polys
            .iter()
            .map(|p| {
                p.terms
                    .iter()
                    .map(|(c, e)| {
                        e.iter()
                            .enumerate()
                            .fold(*c, |acc, (k, &ek)| acc * pw[k][ek as usize])
                    })
                    .sum()
            })
            .collect()
    }

    /// Values and Jacobian (rows = equations, columns = unknowns).
    pub(crate) fn values_and_jacobian(
        &self,
        x: &[Complex64],
    ) -> (DVector<Complex64>, DMatrix<Complex64>) {
        debug_assert_eq!(x.len(), self.nvars);
        let pw = self.powers(x);
        let n = self.nvars;
        let mut vals = DVector::zeros(self.polys.len());
        let mut jac = DMatrix::zeros(self.polys.len(), n);
        for (row, p) in self.polys.iter().enumerate() {
            for (c, e) in &p.terms {
                let mut value = *c;
                for (k, &ek) in e.iter().enumerate() {
                    value *= pw[k][ek as usize];
                }
                vals[row] += value;
                for j in 0..n {
                    let ej = e[j];
                    if ej == 0 {
                        continue;
                    }
                    let mut d = *c * (ej as f64);
                    for (k, &ek) in e.iter().enumerate() {
                        let pk = if k == j { ek - 1 } else { ek };
                        d *= pw[k][pk as usize];
                    }
                    jac[(row, j)] += d;
                }
            }
        }
        (vals, jac)
    }
}
