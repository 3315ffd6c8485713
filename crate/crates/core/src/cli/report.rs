use std::collections::BTreeMap;
use std::time::Instant;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::examples::find_example;
use super::CliError;
use crate::ed::{
    count_cone_critical_points, count_double_cover_critical_points, hyperplane_value,
    sample_generic_beta, CountOptions, CountReport, EdError, GenericData,
};
use crate::homotopy::{PathStatus, TrackerConfig};
use crate::poly::{parse_constant, parse_polynomial};
use crate::topology::{
    chi_eu_restricted, weighted_euler_characteristic, StratumDatum, TopologyError,
    TopologyReport, UserSingularity,
};

/// Seed used when none is given, so that default runs are reproducible.
pub const DEFAULT_SEED: u64 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeedChoice {
    Fixed(u64),
    Random,
}

impl Default for SeedChoice {
    fn default() -> Self {
        SeedChoice::Fixed(DEFAULT_SEED)
    }
}

impl SeedChoice {
    pub fn resolve(self) -> u64 {
        match self {
            SeedChoice::Fixed(s) => s,
            SeedChoice::Random => rand::random(),
        }
    }
}

impl std::str::FromStr for SeedChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "random" {
            return Ok(SeedChoice::Random);
        }
        s.parse()
            .map(SeedChoice::Fixed)
            .map_err(|_| format!("expected an unsigned integer or 'random', got '{s}'"))
    }
}

/// Inputs of one run. Either `polynomial` with `variables`, or `example`.
#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub polynomial: Option<String>,
    pub variables: Option<Vec<String>>,
    pub example: Option<String>,
    pub seed: SeedChoice,
    /// Fixed data point, as constant expressions.
    pub beta: Option<Vec<String>>,
    pub complex_beta: bool,
    pub skip_cover: bool,
    pub singularities: Vec<UserSingularity>,
    pub strata: Option<Vec<StratumDatum>>,
    /// Overrides both the smoothness and the incidence tolerance.
    pub tolerance: Option<f64>,
    pub paths_report: bool,
    pub timings: bool,
    pub tracker: Option<TrackerConfig>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InputDescription {
    pub polynomial: String,
    pub variables: Vec<String>,
    /// Dimension of the ambient projective space.
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub example: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StrataSummary {
    pub strata: Vec<StratumDatum>,
    pub chi_eu_restricted: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PathDiagnostic {
    pub pipeline: String,
    pub path_index: usize,
    pub status: PathStatus,
    pub residual: f64,
    pub steps: usize,
    pub t_end: f64,
    pub cluster_size: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EDReport {
    pub input: InputDescription,
    pub seed: u64,
    /// Fresh data points drawn because the cone and cover counts disagreed.
    pub resamples: usize,
    pub beta: Vec<String>,
    pub ped_numeric: i64,
    pub ped_double_cover_half: Option<i64>,
    pub ped_topological: Option<i64>,
    pub consistency: BTreeMap<String, bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, u64>>,
    pub version: String,
    pub cone: CountReport,
    pub double_cover: Option<CountReport>,
    pub topology: Option<TopologyReport>,
    pub weighted_euler: Option<StrataSummary>,
    /// Pipelines that did not run, with the reason.
    pub skipped: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub paths: Option<Vec<PathDiagnostic>>,
}

impl EDReport {
    pub fn passed(&self) -> bool {
        self.consistency.values().all(|&ok| ok)
    }

    pub fn to_json(&self, compact: bool) -> String {
        if compact {
            serde_json::to_string(self).expect("report serializes")
        } else {
            serde_json::to_string_pretty(self).expect("report serializes")
        }
    }
}

struct Resolved {
    polynomial: String,
    variables: Vec<String>,
    example: Option<&'static super::examples::BuiltinExample>,
}

fn resolve_input(opts: &RunOptions) -> Result<Resolved, CliError> {
    match (&opts.example, &opts.polynomial) {
        (Some(_), Some(_)) => Err(CliError::Input(
            "--example and --poly are mutually exclusive".into(),
        )),
        (Some(name), None) => {
            let ex = find_example(name).ok_or_else(|| {
                CliError::Input(format!(
                    "unknown example '{name}'; available: {}",
                    super::examples::example_names().join(", ")
                ))
            })?;
            let variables = opts.variables.clone().unwrap_or_else(|| ex.variables());
            Ok(Resolved {
                polynomial: ex.polynomial.to_string(),
                variables,
                example: Some(ex),
            })
        }
        (None, Some(poly)) => {
            let variables = opts
                .variables
                .clone()
                .ok_or_else(|| CliError::Input("--vars is required with --poly".into()))?;
            Ok(Resolved {
                polynomial: poly.clone(),
                variables,
                example: None,
            })
        }
        (None, None) => Err(CliError::Input("give --poly and --vars, or --example".into())),
    }
}

fn generic_data(opts: &RunOptions, n: usize, seed: u64) -> Result<GenericData, CliError> {
    match &opts.beta {
        Some(entries) => {
            let beta = entries
                .iter()
                .map(|s| parse_constant(s.trim()))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| CliError::Input(format!("--beta: {e}")))?;
            if beta.len() != n + 1 {
                return Err(CliError::Input(format!(
                    "--beta has {} entries, expected {}",
                    beta.len(),
                    n + 1
                )));
            }
            Ok(GenericData::with_beta(beta, seed)?)
        }
        None => Ok(sample_generic_beta(n, seed, opts.complex_beta)?),
    }
}

fn antipodal(points: &[Vec<Complex64>]) -> bool {
    points.iter().all(|x| {
        let scale = x.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt().max(1.0);
        points.iter().any(|y| {
            let d: f64 = x.iter().zip(y).map(|(a, b)| (a + b).norm_sqr()).sum::<f64>().sqrt();
            d <= 1e-6 * scale
        })
    })
}

fn diagnostics(pipeline: &str, report: &CountReport) -> Vec<PathDiagnostic> {
    report
        .paths
        .iter()
        .map(|p| PathDiagnostic {
            pipeline: pipeline.to_string(),
            path_index: p.path_index,
            status: p.status,
            residual: p.residual,
            steps: p.steps,
            t_end: p.t_end,
            cluster_size: p.cluster_size,
        })
        .collect()
}

// Keeps these retries clear of the ones inside the counting operations.
const MISMATCH_RESAMPLE_OFFSET: u64 = 1000;

fn elapsed_ms(start: Instant) -> u64 {
    start.elapsed().as_millis() as u64
}

/// Runs the cone pipeline, the double-cover pipeline unless skipped, and the
/// topological side when it applies, and cross-checks the results.
pub fn run(opts: &RunOptions) -> Result<EDReport, CliError> {
    let input = resolve_input(opts)?;
    let f = parse_polynomial(&input.polynomial, &input.variables)
        .map_err(|e| CliError::Input(format!("--poly: {e}")))?;
    if input.variables.len() < 2 {
        return Err(CliError::Input("need at least two variables".into()));
    }
    let n = input.variables.len() - 1;
    let seed = opts.seed.resolve();
    let g = generic_data(opts, n, seed)?;
    let mut tracker = opts.tracker.clone().unwrap_or_default();
    tracker.rng_seed = seed;
    tracker.validate().map_err(|e| CliError::Input(e.to_string()))?;
    let mut count_opts = CountOptions::default();
    if let Some(t) = opts.tolerance {
        if !(t > 0.0 && t < 1.0) {
            return Err(CliError::Input("--tolerance must lie in (0, 1)".into()));
        }
        count_opts.smoothness_tolerance = t;
        count_opts.incidence_tolerance = t;
    }

    let mut timings = BTreeMap::new();
    let mut consistency = BTreeMap::new();
    let mut skipped = BTreeMap::new();

    // A data point close to the dual variety pushes a cone critical point
    // towards the vertex where the tracker cannot follow it; the sphere
    // section does not suffer from this. A disagreement therefore triggers
    // fresh data unless the caller fixed beta.
    let mut g = g;
    let mut resamples = 0;
    let (cone, double_cover) = loop {
        let mut step_timings = BTreeMap::new();
        let start = Instant::now();
        let cone = count_cone_critical_points(&f, &g, &tracker, &count_opts)?;
        step_timings.insert("cone".to_string(), elapsed_ms(start));
        let double_cover = if opts.skip_cover {
            None
        } else {
            let start = Instant::now();
            match count_double_cover_critical_points(&f, &g, &tracker, &count_opts) {
                Ok(r) => {
                    step_timings.insert("double_cover".to_string(), elapsed_ms(start));
                    Some(r)
                }
                Err(EdError::ContainedInQuadric) => None,
                Err(e) => return Err(e.into()),
            }
        };
        let agree = double_cover.as_ref().is_none_or(|r| r.count == 2 * cone.count);
        if agree || g.fixed_beta || resamples >= count_opts.max_retries {
            timings.extend(step_timings);
            break (cone, double_cover);
        }
        resamples += 1;
        g = g.resample(MISMATCH_RESAMPLE_OFFSET + resamples as u64);
        tracker.rng_seed = g.seed;
    };
    let ped_numeric = cone.count as i64;
    consistency.insert(
        "cone_paths_conserved".to_string(),
        cone.path_summary.total() as u64 == cone.bezout_number,
    );
    let beta_c = cone.generic.beta_complex();
    consistency.insert(
        "no_cone_witness_on_hbeta".to_string(),
        cone.witnesses
            .iter()
            .all(|x| hyperplane_value(&beta_c, x) > count_opts.incidence_tolerance),
    );
    if opts.skip_cover {
        skipped.insert("double_cover".into(), "--skip-cover".into());
    } else if let Some(r) = &double_cover {
        consistency.insert(
            "cover_paths_conserved".to_string(),
            r.path_summary.total() as u64 == r.bezout_number,
        );
        consistency.insert("cover_is_twice_cone".to_string(), r.count == 2 * cone.count);
        consistency.insert("cover_antipodal".to_string(), antipodal(&r.witnesses));
    } else {
        skipped.insert("double_cover".into(), EdError::ContainedInQuadric.to_string());
    }
    let ped_double_cover_half = double_cover.as_ref().map(|r| (r.count / 2) as i64);

    let strata = opts
        .strata
        .clone()
        .or_else(|| input.example.map(|e| e.strata()).filter(|s| !s.is_empty()));
    let mut ped_topological = None;
    let mut topology = None;
    let mut weighted_euler = None;
    if let Some(strata) = strata {
        let chi = weighted_euler_characteristic(&strata);
        let dim = n as i64 - 1;
        let ped = if dim % 2 == 0 { chi } else { -chi };
        consistency.insert("strata_matches_numeric".to_string(), ped == ped_numeric);
        if n != 2 {
            skipped.insert(
                "topology".into(),
                "automated topology covers plane curves only; using the strata".into(),
            );
        }
        ped_topological = Some(ped);
        weighted_euler = Some(StrataSummary {
            strata,
            chi_eu_restricted: chi,
        });
    } else if n == 2 {
        let start = Instant::now();
        match chi_eu_restricted(&f, &g, &tracker, &count_opts, &opts.singularities) {
            Ok(t) => {
                timings.insert("topology".to_string(), elapsed_ms(start));
                consistency.insert(
                    "topological_matches_numeric".to_string(),
                    t.ped_topological == ped_numeric,
                );
                consistency.insert(
                    "xq_within_bezout".to_string(),
                    t.count_xq as u32 <= 2 * t.degree,
                );
                ped_topological = Some(t.ped_topological);
                topology = Some(t);
            }
            Err(TopologyError::Ed(EdError::ContainedInQuadric)) => {
                skipped.insert("topology".into(), EdError::ContainedInQuadric.to_string());
            }
            Err(e) => return Err(e.into()),
        }
    } else {
        skipped.insert(
            "topology".into(),
            "automated topology covers plane curves only; supply --strata".into(),
        );
    }

    if let Some(ex) = input.example {
        consistency.insert("matches_known_value".to_string(), ped_numeric == ex.expected_ped);
    }

    let paths = opts.paths_report.then(|| {
        let mut all = diagnostics("cone", &cone);
        if let Some(r) = &double_cover {
            all.extend(diagnostics("double_cover", r));
        }
        all
    });

    Ok(EDReport {
        input: InputDescription {
            polynomial: input.polynomial,
            variables: input.variables,
            n,
            example: input.example.map(|e| e.name.to_string()),
        },
        seed,
        resamples,
        beta: cone.generic.beta.clone(),
        ped_numeric,
        ped_double_cover_half,
        ped_topological,
        consistency,
        timings_ms: opts.timings.then_some(timings),
        version: env!("CARGO_PKG_VERSION").to_string(),
        cone,
        double_cover,
        topology,
        weighted_euler,
        skipped,
        paths,
    })
}
