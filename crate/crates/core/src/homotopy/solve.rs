use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::start::total_degree_start;
use super::system::PolynomialSystem;
use super::start::Homotopy;
use super::tracker::{refine, track_path, PathStatus, TrackedSolution};
use super::{HomotopyError, TrackerConfig};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathSummary {
    pub converged: usize,
    pub diverged: usize,
    pub failed: usize,
}

impl PathSummary {
    pub fn total(&self) -> usize {
        self.converged + self.diverged + self.failed
    }
}

/// Result of [`solve_system`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SolveReport {
    /// One representative per cluster of converged endpoints, sorted.
    pub solutions: Vec<TrackedSolution>,
    /// Every path endpoint in start-point order.
    pub paths: Vec<TrackedSolution>,
    pub summary: PathSummary,
    pub bezout_number: u64,
    /// Regular roots missed by the first pass and recovered afterwards.
    #[serde(default)]
    pub rescued: usize,
}

impl SolveReport {
    pub fn points(&self) -> Vec<Vec<Complex64>> {
        self.solutions.iter().map(|s| s.point.clone()).collect()
    }

    pub fn max_cluster_size(&self) -> usize {
        self.solutions.iter().map(|s| s.cluster_size).max().unwrap_or(0)
    }
}

pub(crate) fn distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

fn norm(a: &[Complex64]) -> f64 {
    a.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// Whether `a` and `b` fall in one cluster at `radius` (relative for large points).
pub fn same_point(a: &[Complex64], b: &[Complex64], radius: f64) -> bool {
    distance(a, b) <= radius * norm(a).max(norm(b)).max(1.0)
}

fn sort_key(p: &[Complex64]) -> Vec<i64> {
    p.iter()
        .flat_map(|c| [c.re, c.im])
        .map(|v| (v * 1e6).round() as i64)
        .collect()
}

fn find(parent: &mut [usize], i: usize) -> usize {
    let mut root = i;
    while parent[root] != root {
        root = parent[root];
    }
    let mut cur = i;
    while parent[cur] != root {
        let next = parent[cur];
        parent[cur] = root;
        cur = next;
    }
    root
}

/// Single-linkage clustering of converged endpoints; annotates `paths` with
/// cluster ids and returns one sorted representative per cluster.
pub(crate) fn cluster(paths: &mut [TrackedSolution], radius: f64) -> Vec<TrackedSolution> {
    let mut idx: Vec<usize> = (0..paths.len())
        .filter(|&i| paths[i].status == PathStatus::Converged)
        .collect();
    idx.sort_by(|&a, &b| {
        sort_key(&paths[a].point)
            .cmp(&sort_key(&paths[b].point))
            .then(a.cmp(&b))
    });
    let mut parent: Vec<usize> = (0..idx.len()).collect();
    for a in 0..idx.len() {
        for b in a + 1..idx.len() {
            if same_point(&paths[idx[a]].point, &paths[idx[b]].point, radius) {
                let ra = find(&mut parent, a);
                let rb = find(&mut parent, b);
                if ra != rb {
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut group_of_root = vec![usize::MAX; idx.len()];
    for a in 0..idx.len() {
        let r = find(&mut parent, a);
        if group_of_root[r] == usize::MAX {
            group_of_root[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[group_of_root[r]].push(idx[a]);
    }
    let mut reps: Vec<TrackedSolution> = groups
        .iter()
        .map(|members| {
            let best = *members
                .iter()
                .min_by(|&&a, &&b| {
                    paths[a]
                        .residual
                        .total_cmp(&paths[b].residual)
                        .then(a.cmp(&b))
                })
                .expect("nonempty cluster");
            let mut rep = paths[best].clone();
            rep.cluster_size = members.len();
            rep
        })
        .collect();
    reps.sort_by(|a, b| {
        sort_key(&a.point)
            .cmp(&sort_key(&b.point))
            .then(a.path_index.cmp(&b.path_index))
    });
    for (cid, rep) in reps.iter_mut().enumerate() {
        rep.cluster_id = Some(cid);
    }
    for rep in &reps {
        for p in paths.iter_mut() {
            if p.status == PathStatus::Converged && same_point(&p.point, &rep.point, radius) {
                if p.cluster_id.is_none() {
                    p.cluster_id = rep.cluster_id;
                    p.cluster_size = rep.cluster_size;
                }
            }
        }
    }
    reps
}

/// Ratio of extreme singular values of the target Jacobian at `x`, after
/// scaling rows and then columns to unit norm.
fn conditioning(h: &Homotopy, x: &[Complex64]) -> f64 {
    let (_, mut jac) = h.target_affine.values_and_jacobian(x);
    for mut row in jac.row_iter_mut() {
        let n = row.norm();
        if n > 0.0 {
            row /= Complex64::from(n);
        }
    }
    for mut col in jac.column_iter_mut() {
        let n = col.norm();
        if n > 0.0 {
            col /= Complex64::from(n);
        }
    }
    let sv = jac.singular_values();
    let max = sv.iter().copied().fold(0.0, f64::max);
    let min = sv.iter().copied().fold(f64::INFINITY, f64::min);
    if max > 0.0 { min / max } else { 0.0 }
}

/// Appends `candidate` as a new cluster of size one if it is a regular root
/// not already present.
fn adopt(h: &Homotopy, candidate: &TrackedSolution, solutions: &mut Vec<TrackedSolution>, cfg: &TrackerConfig) -> bool {
    let point = &candidate.point;
    if !point.iter().all(|c| c.re.is_finite() && c.im.is_finite()) {
        return false;
    }
    let r = refine(h, point);
    let tolerance = cfg.newton_tolerance * (1.0 + h.coefficient_norm());
    if r.residual >= tolerance
        || norm(&r.point) >= cfg.divergence_norm
        || conditioning(h, &r.point) < 1e-10
        || solutions.iter().any(|s| same_point(&s.point, &r.point, cfg.cluster_radius))
    {
        return false;
    }
    let mut s = candidate.clone();
    s.point = r.point;
    s.residual = r.residual;
    s.newton_corrections = r.corrections;
    s.status = PathStatus::Converged;
    s.cluster_size = 1;
    s.cluster_id = Some(solutions.len());
    solutions.push(s);
    true
}

fn track_all(h: &Homotopy, starts: &[Vec<Complex64>], config: &TrackerConfig) -> Vec<TrackedSolution> {
    let track = |(i, p): (usize, &Vec<Complex64>)| track_path(h, p, config, i);
    if config.parallel {
        starts.par_iter().enumerate().map(track).collect()
    } else {
        starts.iter().enumerate().map(track).collect()
    }
}

/// All isolated solutions of a square system by total-degree homotopy.
///
/// Every start point is tracked (concurrently when `config.parallel`);
/// converged endpoints are clustered at `config.cluster_radius`. The result
/// does not depend on scheduling.
pub fn solve_system(
    system: &PolynomialSystem,
    config: &TrackerConfig,
) -> Result<SolveReport, HomotopyError> {
    config.validate()?;
    let (homotopy, starts) = total_degree_start(system, config.rng_seed)?;
    let mut paths = track_all(&homotopy, &starts, config);
    let mut summary = PathSummary::default();
    for p in &paths {
        match p.status {
            PathStatus::Converged => summary.converged += 1,
            PathStatus::Diverged => summary.diverged += 1,
            PathStatus::Failed => summary.failed += 1,
        }
    }
    let mut solutions = cluster(&mut paths, config.cluster_radius);
    // Roots next to a cluster of paths at infinity are occasionally lost by
    // path jumping; Newton from a stray endpoint or a second γ recovers them.
    let mut rescued = 0;
    for p in paths.iter().filter(|p| p.status != PathStatus::Converged) {
        rescued += usize::from(adopt(&homotopy, p, &mut solutions, config));
    }
    for pass in 1..config.passes {
        let seed = config.rng_seed.wrapping_add((pass as u64).wrapping_mul(0xD1B5_4A32_D192_ED03));
        let (h, starts) = total_degree_start(system, seed)?;
        let mut extra = track_all(&h, &starts, config);
        for p in cluster(&mut extra, config.cluster_radius) {
            rescued += usize::from(adopt(&homotopy, &p, &mut solutions, config));
        }
    }
    Ok(SolveReport {
        solutions,
        paths,
        summary,
        rescued,
        bezout_number: homotopy.start_system().num_solutions(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn system(texts: &[&str], vars: &[&str]) -> PolynomialSystem {
        PolynomialSystem::new(
            texts
                .iter()
                .map(|t| parse_polynomial(t, vars).unwrap())
                .collect(),
            vars.iter().map(|v| v.to_string()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn circle_meets_diagonal_twice() {
        let r = solve_system(&system(&["x^2+y^2-1", "x-y"], &["x", "y"]), &TrackerConfig::with_seed(4)).unwrap();
        assert_eq!(r.solutions.len(), 2);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        for s in &r.solutions {
            assert!((s.point[0].re.abs() - h).abs() < 1e-10);
            assert!((s.point[0] - s.point[1]).norm() < 1e-10);
        }
        assert!((r.solutions[0].point[0] + r.solutions[1].point[0]).norm() < 1e-10);
    }

    #[test]
    fn double_root_is_one_fat_cluster() {
        let r = solve_system(&system(&["x^2-2*x+1"], &["x"]), &TrackerConfig::with_seed(9)).unwrap();
        assert_eq!(r.summary.converged, 2);
        assert_eq!(r.solutions.len(), 1);
        assert_eq!(r.solutions[0].cluster_size, 2);
        assert!((r.solutions[0].point[0] - Complex64::new(1.0, 0.0)).norm() < 1e-6);
    }

    #[test]
    fn quadratic_roots_plus_minus_one() {
        let r = solve_system(&system(&["x^2-1"], &["x"]), &TrackerConfig::with_seed(1)).unwrap();
        assert_eq!(r.solutions.len(), 2);
        for s in &r.solutions {
            assert!(s.residual < 1e-10);
            assert!((s.point[0].re.abs() - 1.0).abs() < 1e-10 && s.point[0].im.abs() < 1e-10);
        }
    }

    #[test]
    fn paths_at_infinity_diverge() {
        let r = solve_system(&system(&["x*y-1", "x"], &["x", "y"]), &TrackerConfig::with_seed(2)).unwrap();
        assert_eq!(r.summary.total(), 2);
        assert_eq!(r.summary.converged, 0);
        assert!(r.summary.diverged >= 1);
        assert_eq!(r.summary.failed, 0);
    }
}
