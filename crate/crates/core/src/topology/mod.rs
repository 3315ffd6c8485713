//! Topological side for plane curves: local invariants of singular points,
//! Euler characteristics, and the restricted Euler obstruction.

mod euler;
mod files;
mod local;
mod restricted;

use thiserror::Error;

use crate::ed::EdError;

pub use euler::{euler_characteristic_curve, genus, weighted_euler_characteristic, StratumDatum};
pub use files::{parse_singularity_file, parse_strata_file, UserSingularity};
pub use local::{classify_singularity, multiplicity_at, CurveSingularity, SingularityKind};
pub use restricted::{chi_eu_restricted, TopologyReport};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TopologyError {
    #[error("expected a plane curve in 3 homogeneous variables, got {0}")]
    NotPlaneCurve(usize),
    #[error("the point does not lie on the curve")]
    NotOnCurve,
    #[error("the point is a smooth point of the curve")]
    NotSingular,
    #[error("all local jets vanish; the curve contains a multiple component through the point")]
    VanishingJets,
    #[error("unsupported singularity at {point}: {reason}; supply its invariants with a singularity file")]
    UnsupportedSingularity { point: String, reason: String },
    #[error("user-supplied singularity {0} is not a singular point of the curve")]
    UnmatchedSingularity(String),
    #[error("invariants give genus {0}, too small for a reduced curve of this degree")]
    NegativeGenus(i64),
    #[error("line {line}: {message}")]
    File { line: usize, message: String },
    #[error(transparent)]
    Ed(#[from] EdError),
}

impl From<crate::poly::PolyError> for TopologyError {
    fn from(e: crate::poly::PolyError) -> Self {
        TopologyError::Ed(EdError::Poly(e))
    }
}
