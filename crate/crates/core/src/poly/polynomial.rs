use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_traits::Zero;

use super::coeff::{Coefficient, GaussianRational};
use super::PolyError;

/// Dense exponent vector. Ordered graded-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Self(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Self(vec![0; nvars])
    }

    pub fn variable(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Self(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn product(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial over a [`Coefficient`] domain.
///
/// Stored coefficients are never zero and the zero polynomial has no terms.
/// Values are immutable once built; all arithmetic returns new polynomials.
#[derive(Clone, PartialEq, Debug)]
pub struct Polynomial<C> {
    nvars: usize,
    terms: BTreeMap<Monomial, C>,
}

/// Polynomial over ℚ(i); every defining equation is built in this domain.
pub type ExactPolynomial = Polynomial<GaussianRational>;

/// Polynomial over `Complex64`, used at the solver boundary.
pub type ComplexPolynomial = Polynomial<Complex64>;

impl<C: Coefficient> Polynomial<C> {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn variable(nvars: usize, index: usize) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::variable(nvars, index), C::one());
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, merging
    /// repeated monomials and dropping zeros.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Vec<u32>, C)>,
    {
        let mut p = Self::zero(nvars);
        for (exps, c) in terms {
            if exps.len() != nvars {
                return Err(PolyError::DimensionMismatch {
                    expected: nvars,
                    got: exps.len(),
                });
            }
            p.add_term(Monomial(exps), c);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            Some(old) => {
                let sum = old + c;
                if !sum.is_zero() {
                    self.terms.insert(m, sum);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> C {
        self.terms
            .get(&Monomial(exponents.to_vec()))
            .cloned()
            .unwrap_or_else(C::zero)
    }

    /// The constant coefficient, if the polynomial has no other terms.
    pub fn as_constant(&self) -> Option<C> {
        match self.terms.len() {
            0 => Some(C::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (m.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = Self::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.product(mb), ca.clone() * cb.clone());
            }
        }
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a.clone() * c.clone());
        }
        out
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant(self.nvars, C::one());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn partial_derivative(&self, index: usize) -> Result<Self, PolyError> {
        if index >= self.nvars {
            return Err(PolyError::IndexOutOfRange {
                index,
                nvars: self.nvars,
            });
        }
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[index];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[index] -= 1;
            out.add_term(Monomial(exps), c.clone() * C::from_i64(e as i64));
        }
        Ok(out)
    }

    pub fn gradient(&self) -> Vec<Self> {
        (0..self.nvars)
            .map(|i| self.partial_derivative(i).expect("index in range"))
            .collect()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// `(total degree, homogeneous)`.
    pub fn degree_and_homogeneity(&self) -> Result<(u32, bool), PolyError> {
        let d = self.total_degree().ok_or(PolyError::ZeroPolynomial)?;
        let homogeneous = self.terms.keys().all(|m| m.degree() == d);
        Ok((d, homogeneous))
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree_and_homogeneity()
            .map(|(_, h)| h)
            .unwrap_or(true)
    }

    /// Evaluates in the complex domain.
    pub fn evaluate(&self, x: &[Complex64]) -> Result<Complex64, PolyError> {
        if x.len() != self.nvars {
            return Err(PolyError::DimensionMismatch {
                expected: self.nvars,
                got: x.len(),
            });
        }
        let mut acc = Complex64::zero();
        for (m, c) in &self.terms {
            let mut t = c.to_complex();
            for (xi, &e) in x.iter().zip(&m.0) {
                if e > 0 {
                    t *= xi.powu(e);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Evaluates in the coefficient domain itself (exact for ℚ(i)).
    pub fn evaluate_exact(&self, x: &[C]) -> Result<C, PolyError> {
        if x.len() != self.nvars {
            return Err(PolyError::DimensionMismatch {
                expected: self.nvars,
                got: x.len(),
            });
        }
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &e) in x.iter().zip(&m.0) {
                for _ in 0..e {
                    t = t * xi.clone();
                }
            }
            acc = acc + t;
        }
        Ok(acc)
    }

    /// Substitutes `images[j]` for variable `j`. All images must share one
    /// variable count, which becomes the variable count of the result.
    pub fn compose(&self, images: &[Polynomial<C>]) -> Result<Self, PolyError> {
        if images.len() != self.nvars {
            return Err(PolyError::DimensionMismatch {
                expected: self.nvars,
                got: images.len(),
            });
        }
        let target = images.first().map(|p| p.nvars).unwrap_or(0);
        if let Some(bad) = images.iter().find(|p| p.nvars != target) {
            return Err(PolyError::DimensionMismatch {
                expected: target,
                got: bad.nvars,
            });
        }
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut t = Self::constant(target, c.clone());
            for (img, &e) in images.iter().zip(&m.0) {
                if e > 0 {
                    t = t.mul(&img.pow(e));
                }
            }
            out = out.add(&t);
        }
        Ok(out)
    }

    /// Adds one trailing variable `h` and multiplies each term by the power
    /// of `h` that brings it up to `degree` (the total degree by default).
    pub fn homogenize(&self) -> Self {
        let d = self.total_degree().unwrap_or(0);
        let mut out = Self::zero(self.nvars + 1);
        for (m, c) in &self.terms {
            let mut exps = m.0.clone();
            exps.push(d - m.degree());
            out.add_term(Monomial(exps), c.clone());
        }
        out
    }

    /// Part of total degree exactly `degree`.
    pub fn homogeneous_component(&self, degree: u32) -> Self {
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn map_coefficients<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> Polynomial<D> {
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    pub fn to_complex(&self) -> ComplexPolynomial {
        self.map_coefficients(|c| c.to_complex())
    }

    /// Largest coefficient modulus (0 for the zero polynomial).
    pub fn coefficient_norm(&self) -> f64 {
        self.terms
            .values()
            .map(|c| c.to_complex().norm())
            .fold(0.0, f64::max)
    }

    /// Renders with the given variable names, highest graded-lex term first.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> PolynomialDisplay<'a, C> {
        PolynomialDisplay { poly: self, names }
    }
}

impl ExactPolynomial {
    /// Whether every coefficient is real.
    pub fn has_real_coefficients(&self) -> bool {
        self.terms.values().all(GaussianRational::is_real)
    }
}

pub struct PolynomialDisplay<'a, C> {
    poly: &'a Polynomial<C>,
    names: &'a [String],
}

impl<C: Coefficient + fmt::Display> fmt::Display for PolynomialDisplay<'_, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.poly.terms.iter().rev().enumerate() {
            let z = c.to_complex();
            let negative = z.im == 0.0 && z.re < 0.0;
            let c = if k > 0 && negative { -c.clone() } else { c.clone() };
            if k > 0 {
                write!(f, "{}", if negative { " - " } else { " + " })?;
            }
            let mut factors: Vec<String> = Vec::new();
            let minus_one = c == -C::one();
            if m.degree() == 0 || !(c.is_one() || minus_one) {
                factors.push(c.to_string());
            }
            for (name, &e) in self.names.iter().zip(&m.0) {
                match e {
                    0 => {}
                    1 => factors.push(name.clone()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            if minus_one && m.degree() > 0 {
                write!(f, "-")?;
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;
    use num_traits::One;

    fn vars3() -> Vec<String> {
        vec!["x0".into(), "x1".into(), "x2".into()]
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn derivative_of_square() {
        let p = parse_polynomial("x0^2", &vars3()).unwrap();
        let expected = parse_polynomial("2*x0", &vars3()).unwrap();
        assert_eq!(p.partial_derivative(0).unwrap(), expected);
    }

    #[test]
    fn derivative_of_nodal_cubic() {
        let p = parse_polynomial("x0^2*x2 - x1^2*(x1+x2)", &vars3()).unwrap();
        let expected = parse_polynomial("-3*x1^2 - 2*x1*x2", &vars3()).unwrap();
        assert_eq!(p.partial_derivative(1).unwrap(), expected);
    }

    #[test]
    fn derivative_of_constant_is_zero() {
        let p = parse_polynomial("7", &vars3()).unwrap();
        assert!(p.partial_derivative(2).unwrap().is_zero());
        assert!(matches!(
            p.partial_derivative(3),
            Err(PolyError::IndexOutOfRange { index: 3, nvars: 3 })
        ));
    }

    #[test]
    fn degree_queries() {
        let v4: Vec<String> = (0..4).map(|i| format!("x{i}")).collect();
        let whitney = parse_polynomial("x0^2*x1 - x2*x3^2", &v4).unwrap();
        assert_eq!(whitney.degree_and_homogeneity().unwrap(), (3, true));
        let v1 = vec!["x".to_string()];
        let p = parse_polynomial("x^2 + x", &v1).unwrap();
        assert_eq!(p.degree_and_homogeneity().unwrap(), (2, false));
        assert!(matches!(
            Polynomial::<Complex64>::zero(2).degree_and_homogeneity(),
            Err(PolyError::ZeroPolynomial)
        ));
    }

    #[test]
    fn evaluation_examples() {
        let q = parse_polynomial("x0^2+x1^2+x2^2", &vars3()).unwrap();
        assert_eq!(q.evaluate(&[c(1., 0.), c(0., 0.), c(0., 0.)]).unwrap(), c(1., 0.));
        let f1 = parse_polynomial("x0^2*x2 - x1^2*(x1+x2)", &vars3()).unwrap();
        assert_eq!(f1.evaluate(&[c(0., 0.), c(0., 0.), c(1., 0.)]).unwrap(), c(0., 0.));
        let f2 = parse_polynomial("x0^2*x1 - (x1 - i*x2)^2*x2", &vars3()).unwrap();
        // the node is [0:1:-i]
        assert!(f2.evaluate(&[c(0., 0.), c(1., 0.), c(0., -1.)]).unwrap().norm() < 1e-15);
        assert!(f2.evaluate(&[c(0., 0.), c(1., 0.), c(0., 1.)]).unwrap().norm() > 1.0);
        assert!(matches!(
            f2.evaluate(&[c(0., 0.)]),
            Err(PolyError::DimensionMismatch { expected: 3, got: 1 })
        ));
    }

    #[test]
    fn exact_evaluation_at_gaussian_point() {
        let f2 = parse_polynomial("x0^2*x1 - (x1 - i*x2)^2*x2", &vars3()).unwrap();
        let p = [
            GaussianRational::zero(),
            GaussianRational::one(),
            -GaussianRational::imaginary_unit(),
        ];
        assert!(f2.evaluate_exact(&p).unwrap().is_zero());
    }

    #[test]
    fn homogenize_adds_trailing_variable() {
        let v = vec!["x".to_string(), "y".to_string()];
        let p = parse_polynomial("x*y - 1", &v).unwrap();
        let h = p.homogenize();
        assert_eq!(h.nvars(), 3);
        assert_eq!(h.degree_and_homogeneity().unwrap(), (2, true));
        assert_eq!(h.coefficient(&[0, 0, 2]), GaussianRational::from_i64(-1));
    }

    #[test]
    fn compose_translates() {
        // (x+1)^2 at y = x - 1 gives x^2
        let v = vec!["x".to_string()];
        let p = parse_polynomial("(x+1)^2", &v).unwrap();
        let shift = parse_polynomial("x-1", &v).unwrap();
        let q = p.compose(&[shift]).unwrap();
        assert_eq!(q, parse_polynomial("x^2", &v).unwrap());
    }

    #[test]
    fn display_is_graded_lex_descending() {
        let p = parse_polynomial("1 + x2 + x0^2*x2 - x1^3", &vars3()).unwrap();
        assert_eq!(p.display_with(&vars3()).to_string(), "x0^2*x2 - x1^3 + x2 + 1");
    }
}
