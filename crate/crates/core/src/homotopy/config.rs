use serde::{Deserialize, Serialize};

use super::HomotopyError;

/// Path-tracking parameters.
///
/// `min_step` is an absolute step in `t` until `t` reaches `endgame_start`;
/// beyond that it is taken relative to the remaining distance `1 - t`, so
/// paths approaching singular endpoints can keep shrinking their steps.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrackerConfig {
    pub newton_tolerance: f64,
    pub max_corrector_iterations: usize,
    pub initial_step: f64,
    pub min_step: f64,
    pub divergence_norm: f64,
    pub endgame_start: f64,
    pub cluster_radius: f64,
    pub rng_seed: u64,
    /// Independent solves with fresh `γ`; regular roots found only by a later
    /// pass are merged into the first.
    pub passes: usize,
    /// Track paths on the rayon pool. Results do not depend on this.
    pub parallel: bool,
}

impl Default for TrackerConfig {
    fn default() -> Self {
        Self {
            newton_tolerance: 1e-10,
            max_corrector_iterations: 5,
            initial_step: 0.05,
            min_step: 1e-7,
            divergence_norm: 1e8,
            endgame_start: 0.9,
            cluster_radius: 1e-6,
            rng_seed: 0,
            passes: 2,
            parallel: true,
        }
    }
}

impl TrackerConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            rng_seed: seed,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<(), HomotopyError> {
        let bad = |msg: &str| Err(HomotopyError::InvalidConfig(msg.to_string()));
        if !(self.initial_step > 0.0 && self.initial_step <= 1.0) {
            return bad("initial_step must lie in (0, 1]");
        }
        if !(self.min_step > 0.0 && self.min_step < self.initial_step) {
            return bad("min_step must be positive and below initial_step");
        }
        if !(self.newton_tolerance > 0.0 && self.newton_tolerance < self.cluster_radius) {
            return bad("need 0 < newton_tolerance < cluster_radius");
        }
        if !(self.endgame_start > 0.0 && self.endgame_start < 1.0) {
            return bad("endgame_start must lie in (0, 1)");
        }
        if !(self.divergence_norm > 0.0) {
            return bad("divergence_norm must be positive");
        }
        if self.passes == 0 {
            return bad("passes must be at least 1");
        }
        if self.max_corrector_iterations == 0 {
            return bad("max_corrector_iterations must be at least 1");
        }
        Ok(())
    }
}
