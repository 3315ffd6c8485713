//! Total-degree homotopy continuation for square polynomial systems.
//!
//! Paths are tracked in projective coordinates on a random affine patch with
//! a fourth-order Runge–Kutta predictor and a Newton corrector. Endpoints at
//! infinity are recognised either by the size of the homogenizing coordinate
//! or by its decay rate along the final stretch of the path.

mod config;
mod solve;
mod start;
mod system;
mod tracker;

use thiserror::Error;

pub use config::TrackerConfig;
pub use solve::{same_point, solve_system, PathSummary, SolveReport};
pub use start::{total_degree_start, Homotopy, StartSystem};
pub use system::PolynomialSystem;
pub use tracker::{track_path, PathStatus, TrackedSolution};


#[derive(Debug, Clone, PartialEq, Error)]
pub enum HomotopyError {
    #[error("system is not square: {equations} equations in {unknowns} unknowns")]
    NonSquare { equations: usize, unknowns: usize },
    #[error("equation {0} is the zero polynomial")]
    ZeroEquation(usize),
    #[error("equation {0} is a nonzero constant")]
    ConstantEquation(usize),
    #[error("equation {equation} has {got} variables, expected {expected}")]
    VariableCount {
        equation: usize,
        expected: usize,
        got: usize,
    },
    #[error("invalid tracker configuration: {0}")]
    InvalidConfig(String),
}
