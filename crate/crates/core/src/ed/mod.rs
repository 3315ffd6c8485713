//! Polynomial systems whose solution counts realize the projective ED
//! degree, and the reductions from solver output to those counts.

mod counts;
mod generic;
mod systems;

use thiserror::Error;

use crate::homotopy::HomotopyError;
use crate::poly::PolyError;

pub use counts::{
    contained_in_isotropic_quadric, count_cone_critical_points,
    count_distinct_projective_intersection, count_double_cover_critical_points,
    find_projective_singular_points, normalize_projective, projective_distance,
    same_projective_set, CountOptions, CountReport, FLAG_CHART_INSTABILITY, FLAG_FAILED_PATHS,
    FLAG_MULTIPLE_ROOT, FLAG_POINT_ON_HBETA, FLAG_SCALAR_PAIR,
};
pub use generic::{
    isotropic_value, sample_generic_beta, validate_beta, GenericData, GenericSummary,
};
pub use systems::{
    build_cone_critical_system, build_double_cover_system, build_intersection_system,
    isotropic_quadric,
};

pub(crate) use counts::{hyperplane_value, relative_value};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EdError {
    #[error("the defining polynomial must be homogeneous")]
    NonHomogeneous,
    #[error("the defining polynomial must have positive degree")]
    ConstantPolynomial,
    #[error("expected {expected} variables, got {got}")]
    VariableCount { expected: usize, got: usize },
    #[error("ambient projective dimension must be at least 1, got {0}")]
    InvalidDimension(usize),
    #[error("invalid beta: {0}")]
    InvalidBeta(String),
    #[error("the variety lies inside the isotropic quadric")]
    ContainedInQuadric,
    #[error("generic data rejected after {attempts} attempts: {}", flags.join(", "))]
    Genericity { attempts: usize, flags: Vec<String> },
    #[error("{failed} paths failed to track after {attempts} attempts")]
    SolverFailure { failed: usize, attempts: usize },
    #[error("{0}")]
    PositiveDimensional(String),
    #[error("numerical inconsistency: {0}")]
    Numerical(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Homotopy(#[from] HomotopyError),
}
