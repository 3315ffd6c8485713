//! Multivariate polynomials over exact Gaussian rationals and complex floats.

mod coeff;
mod parse;
mod polynomial;

use thiserror::Error;

pub use coeff::{Coefficient, GaussianRational};
pub use parse::{parse_constant, parse_polynomial};
pub use polynomial::{
    ComplexPolynomial, ExactPolynomial, Monomial, Polynomial, PolynomialDisplay,
};

/// A point of complex affine space.
pub type ComplexPoint = Vec<num_complex::Complex64>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolyError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown variable '{name}' at position {position}")]
    UnknownVariable { name: String, position: usize },
    #[error("invalid variable name '{0}'")]
    InvalidVariableName(String),
    #[error("expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("variable index {index} out of range for {nvars} variables")]
    IndexOutOfRange { index: usize, nvars: usize },
    #[error("degree of the zero polynomial is undefined")]
    ZeroPolynomial,
}
