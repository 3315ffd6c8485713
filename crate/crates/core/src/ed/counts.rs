use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::generic::{GenericData, GenericSummary};
use super::systems::{
    build_cone_critical_system, build_double_cover_system, build_intersection_system,
    isotropic_quadric,
};
use super::EdError;
use crate::homotopy::{solve_system, PathStatus, PathSummary, PolynomialSystem, SolveReport, TrackedSolution, TrackerConfig};
use crate::poly::{ComplexPoint, ComplexPolynomial, ExactPolynomial, GaussianRational};

/// Flag: a critical point lies on the hyperplane `l_β = 0`.
pub const FLAG_POINT_ON_HBETA: &str = "point_on_Hbeta";
/// Flag: two cone critical points are complex scalar multiples.
pub const FLAG_SCALAR_PAIR: &str = "scalar_pair";
/// Flag: a critical point is not a simple root.
pub const FLAG_MULTIPLE_ROOT: &str = "multiple_root";
/// Flag: two random charts produced different projective point sets.
pub const FLAG_CHART_INSTABILITY: &str = "chart_instability";
/// Flag: some path neither converged nor diverged.
pub const FLAG_FAILED_PATHS: &str = "failed_paths";

/// Knobs shared by the counting operations.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountOptions {
    /// Relative threshold below which `‖∇F‖` marks a point as singular.
    pub smoothness_tolerance: f64,
    /// Relative threshold for `|l_β(x)|` and point incidences.
    pub incidence_tolerance: f64,
    /// Resamples of generic data after the first attempt.
    pub max_retries: usize,
}

impl Default for CountOptions {
    fn default() -> Self {
        Self {
            smoothness_tolerance: 1e-8,
            incidence_tolerance: 1e-8,
            max_retries: 5,
        }
    }
}

/// Integer count together with the evidence behind it.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CountReport {
    pub count: usize,
    pub path_summary: PathSummary,
    pub bezout_number: u64,
    #[serde(skip)]
    pub witnesses: Vec<ComplexPoint>,
    /// Paths merged into each witness.
    pub cluster_sizes: Vec<usize>,
    /// Flags raised by rejected attempts, as `attempt N: flag`.
    pub genericity_flags: Vec<String>,
    pub attempts: usize,
    pub generic: GenericSummary,
    /// Tracker seed of the accepted solve.
    pub tracker_seed: u64,
    /// Every tracked path of the accepted solve.
    #[serde(skip)]
    pub paths: Vec<TrackedSolution>,
}

impl CountReport {
    pub fn has_fat_cluster(&self) -> bool {
        self.cluster_sizes.iter().any(|&c| c > 1)
    }
}

pub(crate) fn norm(x: &[Complex64]) -> f64 {
    x.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// Sine of the angle between two points of `ℂⁿ⁺¹` viewed projectively.
pub fn projective_distance(p: &[Complex64], q: &[Complex64]) -> f64 {
    let (np, nq) = (norm(p), norm(q));
    if np == 0.0 || nq == 0.0 {
        return 1.0;
    }
    let inner: Complex64 = p.iter().zip(q).map(|(a, b)| a.conj() * b).sum();
    let cos2 = (inner.norm() / (np * nq)).powi(2);
    (1.0 - cos2).max(0.0).sqrt()
}

/// Representative scaled so its largest-modulus coordinate is 1.
pub fn normalize_projective(p: &[Complex64]) -> ComplexPoint {
    let pivot = p
        .iter()
        .copied()
        .max_by(|a, b| a.norm().total_cmp(&b.norm()))
        .unwrap_or(Complex64::new(1.0, 0.0));
    p.iter().map(|c| c / pivot).collect()
}

const PROJECTIVE_MATCH: f64 = 1e-6;

/// Whether two lists of projective points agree as sets.
pub fn same_projective_set(a: &[ComplexPoint], b: &[ComplexPoint]) -> bool {
    a.len() == b.len()
        && a.iter().all(|p| b.iter().any(|q| projective_distance(p, q) < PROJECTIVE_MATCH))
        && b.iter().all(|q| a.iter().any(|p| projective_distance(p, q) < PROJECTIVE_MATCH))
}

pub(crate) fn relative_value(p: &ComplexPolynomial, x: &[Complex64]) -> f64 {
    let d = p.total_degree().unwrap_or(0) as i32;
    let scale = p.coefficient_norm().max(f64::MIN_POSITIVE) * norm(x).max(1.0).powi(d);
    p.evaluate(x).expect("dimension checked").norm() / scale
}

pub(crate) fn gradient_size(grad: &[ComplexPolynomial], f: &ComplexPolynomial, x: &[Complex64]) -> f64 {
    let d = f.total_degree().unwrap_or(1) as i32;
    let scale = f.coefficient_norm().max(f64::MIN_POSITIVE) * norm(x).max(1.0).powi(d - 1);
    grad.iter()
        .map(|p| p.evaluate(x).expect("dimension checked").norm_sqr())
        .sum::<f64>()
        .sqrt()
        / scale
}

/// `|l_β(x)| / (‖β‖·‖x‖)`.
pub(crate) fn hyperplane_value(beta: &[Complex64], x: &[Complex64]) -> f64 {
    let l: Complex64 = beta.iter().zip(x).map(|(b, xi)| b * xi).sum();
    let scale = norm(beta) * norm(x);
    if scale == 0.0 {
        0.0
    } else {
        l.norm() / scale
    }
}

/// Whether `X = {F = 0}` lies inside the isotropic quadric, i.e. `F` is a
/// constant multiple of a power of `Σ x_i²` (irreducible for `n ≥ 2`).
pub fn contained_in_isotropic_quadric(f: &ExactPolynomial) -> bool {
    let Some(d) = f.total_degree() else {
        return false;
    };
    if d == 0 || d % 2 == 1 || f.nvars() < 3 {
        return false;
    }
    let power = isotropic_quadric(f.nvars()).pow(d / 2);
    let lead = vec![d, 0, 0]
        .into_iter()
        .chain(std::iter::repeat(0).take(f.nvars() - 3))
        .collect::<Vec<u32>>();
    let c = f.coefficient(&lead);
    power.scale(&c) == *f
}

fn tracker_for(config: &TrackerConfig, attempt: usize) -> TrackerConfig {
    let mut cfg = config.clone();
    cfg.rng_seed = config
        .rng_seed
        .wrapping_add((attempt as u64).wrapping_mul(0x2545_F491_4F6C_DD1D));
    cfg
}

enum Verdict {
    Accept(CountReport),
    Flags(Vec<String>),
}

/// Shared retry loop: `attempt_fn` solves with the given data and tracker and
/// either accepts or returns the flags that make the data non-generic.
fn with_retries(
    g: &GenericData,
    config: &TrackerConfig,
    opts: &CountOptions,
    mut attempt_fn: impl FnMut(&GenericData, &TrackerConfig) -> Result<Verdict, EdError>,
) -> Result<CountReport, EdError> {
    let mut history = Vec::new();
    let mut data = g.clone();
    let mut last_summary = PathSummary::default();
    let mut last_was_failure = false;
    for attempt in 0..=opts.max_retries {
        let cfg = tracker_for(config, attempt);
        match attempt_fn(&data, &cfg)? {
            Verdict::Accept(mut report) => {
                report.genericity_flags = history;
                report.attempts = attempt + 1;
                return Ok(report);
            }
            Verdict::Flags(flags) => {
                last_was_failure = flags.iter().all(|f| f.starts_with(FLAG_FAILED_PATHS));
                for f in &flags {
                    if let Some(s) = f.strip_prefix(FLAG_FAILED_PATHS) {
                        last_summary.failed = s.trim_start_matches(':').parse().unwrap_or(1);
                    }
                    history.push(format!("attempt {}: {f}", attempt + 1));
                }
                if last_was_failure {
                    // γ changes with the tracker seed; the generic data can stay.
                    continue;
                }
                if data.fixed_beta && flags.iter().any(|f| f != FLAG_CHART_INSTABILITY) {
                    return Err(EdError::Genericity {
                        attempts: attempt + 1,
                        flags: history,
                    });
                }
                data = g.resample(attempt as u64 + 1);
            }
        }
    }
    if last_was_failure {
        Err(EdError::SolverFailure {
            failed: last_summary.failed,
            attempts: opts.max_retries + 1,
        })
    } else {
        Err(EdError::Genericity {
            attempts: opts.max_retries + 1,
            flags: history,
        })
    }
}

fn base_report(solve: &SolveReport, g: &GenericData, cfg: &TrackerConfig) -> CountReport {
    CountReport {
        count: 0,
        path_summary: solve.summary,
        bezout_number: solve.bezout_number,
        witnesses: Vec::new(),
        cluster_sizes: Vec::new(),
        genericity_flags: Vec::new(),
        attempts: 1,
        generic: GenericSummary::from(g),
        tracker_seed: cfg.rng_seed,
        paths: solve.paths.clone(),
    }
}

struct Smooth {
    points: Vec<ComplexPoint>,
    sizes: Vec<usize>,
}

/// Converged cluster representatives whose `x`-part is a smooth point of the cone.
fn smooth_witnesses(
    solve: &SolveReport,
    f: &ExactPolynomial,
    opts: &CountOptions,
) -> Smooth {
    let m = f.nvars();
    let fc = f.to_complex();
    let grad: Vec<_> = fc.gradient();
    let mut points = Vec::new();
    let mut sizes = Vec::new();
    for s in &solve.solutions {
        let x = &s.point[..m];
        if gradient_size(&grad, &fc, x) > opts.smoothness_tolerance {
            points.push(x.to_vec());
            sizes.push(s.cluster_size);
        }
    }
    Smooth { points, sizes }
}

fn failed_flag(solve: &SolveReport) -> Option<Vec<String>> {
    (solve.summary.failed > 0).then(|| vec![format!("{FLAG_FAILED_PATHS}:{}", solve.summary.failed)])
}

/// Number of critical points of the squared distance from `β` on the smooth
/// part of the affine cone over `{F = 0}`, which is the projective ED degree.
pub fn count_cone_critical_points(
    f: &ExactPolynomial,
    g: &GenericData,
    config: &TrackerConfig,
    opts: &CountOptions,
) -> Result<CountReport, EdError> {
    build_cone_critical_system(f, g)?;
    with_retries(g, config, opts, |data, cfg| {
        let system = build_cone_critical_system(f, data)?;
        let solve = solve_system(&system, cfg)?;
        if let Some(flags) = failed_flag(&solve) {
            return Ok(Verdict::Flags(flags));
        }
        let smooth = smooth_witnesses(&solve, f, opts);
        let beta = data.beta_complex();
        let mut flags = Vec::new();
        if smooth
            .points
            .iter()
            .any(|x| hyperplane_value(&beta, x) <= opts.incidence_tolerance)
        {
            flags.push(FLAG_POINT_ON_HBETA.to_string());
        }
        let pts = &smooth.points;
        if (0..pts.len()).any(|a| (a + 1..pts.len()).any(|b| projective_distance(&pts[a], &pts[b]) < PROJECTIVE_MATCH)) {
            flags.push(FLAG_SCALAR_PAIR.to_string());
        }
        if smooth.sizes.iter().any(|&c| c > 1) {
            flags.push(FLAG_MULTIPLE_ROOT.to_string());
        }
        if !flags.is_empty() {
            return Ok(Verdict::Flags(flags));
        }
        let mut report = base_report(&solve, data, cfg);
        report.count = smooth.points.len();
        report.witnesses = smooth.points;
        report.cluster_sizes = smooth.sizes;
        Ok(Verdict::Accept(report))
    })
}

/// Number of critical points of `l_β` on the smooth part of
/// `Y = {F = 0} ∩ {Σx_i² = 1}`; equals twice the projective ED degree.
pub fn count_double_cover_critical_points(
    f: &ExactPolynomial,
    g: &GenericData,
    config: &TrackerConfig,
    opts: &CountOptions,
) -> Result<CountReport, EdError> {
    build_double_cover_system(f, g)?;
    if contained_in_isotropic_quadric(f) {
        return Err(EdError::ContainedInQuadric);
    }
    with_retries(g, config, opts, |data, cfg| {
        let system = build_double_cover_system(f, data)?;
        let solve = solve_system(&system, cfg)?;
        if let Some(flags) = failed_flag(&solve) {
            return Ok(Verdict::Flags(flags));
        }
        let smooth = smooth_witnesses(&solve, f, opts);
        let beta = data.beta_complex();
        let mut flags = Vec::new();
        if smooth
            .points
            .iter()
            .any(|x| hyperplane_value(&beta, x) <= opts.incidence_tolerance)
        {
            flags.push(FLAG_POINT_ON_HBETA.to_string());
        }
        if smooth.sizes.iter().any(|&c| c > 1) {
            flags.push(FLAG_MULTIPLE_ROOT.to_string());
        }
        if !flags.is_empty() {
            return Ok(Verdict::Flags(flags));
        }
        let mut report = base_report(&solve, data, cfg);
        report.count = smooth.points.len();
        report.witnesses = smooth.points;
        report.cluster_sizes = smooth.sizes;
        Ok(Verdict::Accept(report))
    })
}

fn mixing_rows(seed: u64, rows: usize, cols: usize) -> Vec<Vec<GaussianRational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5DEE_CE66_D1CE_4E5B);
    (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| {
                    let re = rng.random_range(-9i64..=9);
                    let im = rng.random_range(-9i64..=9);
                    let den = rng.random_range(1i64..=9);
                    GaussianRational::ratio(re, den)
                        + GaussianRational::ratio(im, den) * GaussianRational::imaginary_unit()
                })
                .collect()
        })
        .collect()
}

struct ProjectiveSolve {
    points: Vec<ComplexPoint>,
    sizes: Vec<usize>,
    /// Endpoints of non-converged paths that still lie on every polynomial.
    stray: Vec<ComplexPoint>,
    solve: SolveReport,
}

fn solve_projective(
    polys: &[ExactPolynomial],
    chart: &[GaussianRational],
    mixing: &[Vec<GaussianRational>],
    cfg: &TrackerConfig,
    opts: &CountOptions,
) -> Result<ProjectiveSolve, EdError> {
    let system: PolynomialSystem = build_intersection_system(polys, chart, mixing)?;
    let solve = solve_system(&system, cfg)?;
    let complex: Vec<_> = polys.iter().map(ExactPolynomial::to_complex).collect();
    let mut points = Vec::new();
    let mut sizes = Vec::new();
    for s in &solve.solutions {
        if complex
            .iter()
            .all(|p| relative_value(p, &s.point) <= opts.smoothness_tolerance)
        {
            points.push(normalize_projective(&s.point));
            sizes.push(s.cluster_size);
        }
    }
    let stray = solve
        .paths
        .iter()
        .filter(|p| p.status != PathStatus::Converged)
        .filter(|p| p.point.iter().all(|c| c.re.is_finite() && c.im.is_finite()))
        .filter(|p| complex.iter().all(|q| relative_value(q, &p.point) <= STRAY_TOLERANCE))
        .map(|p| normalize_projective(&p.point))
        .collect();
    Ok(ProjectiveSolve {
        points,
        sizes,
        stray,
        solve,
    })
}

const STRAY_TOLERANCE: f64 = 1e-6;
const STRAY_MATCH: f64 = 1e-3;

/// Distinct points of `{polys = 0} ⊂ ℙⁿ`, found on a random chart and
/// confirmed on a second one. Cluster sizes above one mark non-transversal
/// points.
pub fn count_distinct_projective_intersection(
    polys: &[ExactPolynomial],
    g: &GenericData,
    config: &TrackerConfig,
    opts: &CountOptions,
) -> Result<CountReport, EdError> {
    let m = g.ambient_dimension() + 1;
    if let Some(p) = polys.iter().find(|p| p.nvars() != m) {
        return Err(EdError::VariableCount {
            expected: m,
            got: p.nvars(),
        });
    }
    with_retries(g, config, opts, |data, cfg| {
        let mixing = mixing_rows(data.seed, m - 1, polys.len());
        let alt_mixing = mixing_rows(data.seed.wrapping_add(1), m - 1, polys.len());
        let first = solve_projective(polys, &data.chart, &mixing, cfg, opts)?;
        let mut alt_cfg = cfg.clone();
        alt_cfg.rng_seed = cfg.rng_seed.wrapping_add(17);
        let second = solve_projective(polys, &data.alt_chart, &alt_mixing, &alt_cfg, opts)?;
        // Paths that stall on a continuum of solutions stop at points that
        // move with the chart; isolated troublesome points do not.
        let moving = |a: &ProjectiveSolve, b: &ProjectiveSolve| {
            a.stray.iter().any(|p| {
                !b.points
                    .iter()
                    .chain(&b.stray)
                    .any(|q| projective_distance(p, q) < STRAY_MATCH)
            })
        };
        if moving(&first, &second) || moving(&second, &first) {
            return Ok(Verdict::Flags(vec![FLAG_CHART_INSTABILITY.to_string()]));
        }
        if let Some(flags) = failed_flag(&first.solve).or_else(|| failed_flag(&second.solve)) {
            return Ok(Verdict::Flags(flags));
        }
        if !same_projective_set(&first.points, &second.points) {
            return Ok(Verdict::Flags(vec![FLAG_CHART_INSTABILITY.to_string()]));
        }
        let mut report = base_report(&first.solve, data, cfg);
        report.count = first.points.len();
        report.witnesses = first.points;
        report.cluster_sizes = first.sizes;
        Ok(Verdict::Accept(report))
    })
    .map_err(|e| match e {
        EdError::Genericity { flags, .. }
            if flags.iter().all(|f| f.ends_with(FLAG_CHART_INSTABILITY)) =>
        {
            EdError::PositiveDimensional(
                "intersection points move with the chart; the intersection is not finite".into(),
            )
        }
        other => other,
    })
}

/// Distinct singular points of `{F = 0} ⊂ ℙⁿ`, each scaled so its largest
/// coordinate is 1.
pub fn find_projective_singular_points(
    f: &ExactPolynomial,
    g: &GenericData,
    config: &TrackerConfig,
    opts: &CountOptions,
) -> Result<Vec<ComplexPoint>, EdError> {
    let (_, homogeneous) = f.degree_and_homogeneity()?;
    if !homogeneous {
        return Err(EdError::NonHomogeneous);
    }
    if f.total_degree() == Some(1) {
        return Ok(Vec::new());
    }
    let grad = f.gradient();
    let report = count_distinct_projective_intersection(&grad, g, config, opts).map_err(|e| match e {
        EdError::PositiveDimensional(_) => EdError::PositiveDimensional(
            "singular locus is positive-dimensional; not supported for automated topology".into(),
        ),
        other => other,
    })?;
    let fc = f.to_complex();
    for p in &report.witnesses {
        // Euler's identity puts every common zero of the partials on X.
        debug_assert!(relative_value(&fc, p) <= opts.smoothness_tolerance);
        if relative_value(&fc, p) > opts.smoothness_tolerance {
            return Err(EdError::Numerical("singular point off the variety".into()));
        }
    }
    Ok(report.witnesses)
}
