//! Command-line orchestration: reports, the example suite and argument handling.

mod args;
mod examples;
mod report;
mod suite;

use thiserror::Error;

use crate::ed::EdError;
use crate::topology::TopologyError;

pub use args::{execute, Cli, Command, RunArgs, SuiteArgs};
pub use examples::{example_names, find_example, BuiltinExample, EXAMPLES};
pub use report::{
    run, EDReport, InputDescription, PathDiagnostic, RunOptions, SeedChoice, StrataSummary,
    DEFAULT_SEED,
};
pub use suite::{format_suite, run_suite, SuiteReport, SuiteRow};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_GENERICITY: i32 = 2;
pub const EXIT_UNSUPPORTED_SINGULARITY: i32 = 3;
pub const EXIT_SOLVER_FAILURE: i32 = 4;
pub const EXIT_INPUT: i32 = 5;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Ed(#[from] EdError),
    #[error(transparent)]
    Topology(#[from] TopologyError),
}

fn ed_exit_code(e: &EdError) -> i32 {
    match e {
        EdError::Genericity { .. } => EXIT_GENERICITY,
        EdError::SolverFailure { .. } => EXIT_SOLVER_FAILURE,
        _ => EXIT_INPUT,
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Ed(e) => ed_exit_code(e),
            CliError::Topology(e) => match e {
                TopologyError::UnsupportedSingularity { .. }
                | TopologyError::VanishingJets
                | TopologyError::Ed(EdError::PositiveDimensional(_)) => {
                    EXIT_UNSUPPORTED_SINGULARITY
                }
                TopologyError::Ed(inner) => ed_exit_code(inner),
                _ => EXIT_INPUT,
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Input("x".into()).exit_code(), EXIT_INPUT);
        let gen = EdError::Genericity { attempts: 6, flags: vec![] };
        assert_eq!(CliError::Ed(gen.clone()).exit_code(), EXIT_GENERICITY);
        assert_eq!(CliError::Topology(TopologyError::Ed(gen)).exit_code(), EXIT_GENERICITY);
        let fail = EdError::SolverFailure { failed: 1, attempts: 6 };
        assert_eq!(CliError::Ed(fail).exit_code(), EXIT_SOLVER_FAILURE);
        let unsupported = TopologyError::UnsupportedSingularity {
            point: "[0:0:1]".into(),
            reason: "tacnode".into(),
        };
        assert_eq!(CliError::Topology(unsupported).exit_code(), EXIT_UNSUPPORTED_SINGULARITY);
        let whitney = TopologyError::Ed(EdError::PositiveDimensional("line".into()));
        assert_eq!(CliError::Topology(whitney).exit_code(), EXIT_UNSUPPORTED_SINGULARITY);
    }
}
