use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::start::Homotopy;
use super::TrackerConfig;
use crate::poly::ComplexPoint;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PathStatus {
    Converged,
    Diverged,
    Failed,
}

/// Endpoint of one homotopy path.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrackedSolution {
    /// Affine coordinates of the endpoint (best available for non-converged paths).
    pub point: ComplexPoint,
    pub residual: f64,
    pub status: PathStatus,
    pub cluster_id: Option<usize>,
    /// Number of converged paths merged into this cluster.
    pub cluster_size: usize,
    pub path_index: usize,
    pub steps: usize,
    /// Value of `t` where tracking stopped.
    pub t_end: f64,
    /// Size of the first and second Newton corrections at the endpoint.
    pub newton_corrections: (f64, f64),
}

const MAX_STEP: f64 = 0.1;
const S_FLOOR: f64 = 1e-14;
const MAX_STEPS: usize = 50_000;
const REFINE_ITERATIONS: usize = 60;

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

fn dvec_norm(v: &DVector<Complex64>) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

fn solve(jac: DMatrix<Complex64>, rhs: DVector<Complex64>) -> Option<DVector<Complex64>> {
    let sol = jac.lu().solve(&rhs)?;
    sol.iter().all(|c| c.re.is_finite() && c.im.is_finite()).then_some(sol)
}

/// `dz/ds` from the Davidenko equation `H_z·dz/ds = -H_s`.
fn tangent(h: &Homotopy, z: &[Complex64], s: f64) -> Option<Vec<Complex64>> {
    let e = h.eval(z, s);
    let dz = solve(e.jacobian, -e.ds)?;
    Some(dz.iter().copied().collect())
}

fn axpy(z: &[Complex64], a: f64, v: &[Complex64]) -> Vec<Complex64> {
    z.iter().zip(v).map(|(zi, vi)| zi + vi * a).collect()
}

/// Classical fourth-order Runge–Kutta step from `s` to `s + ds`.
fn rk4(h: &Homotopy, z: &[Complex64], s: f64, ds: f64) -> Option<Vec<Complex64>> {
    let k1 = tangent(h, z, s)?;
    let k2 = tangent(h, &axpy(z, ds / 2.0, &k1), s + ds / 2.0)?;
    let k3 = tangent(h, &axpy(z, ds / 2.0, &k2), s + ds / 2.0)?;
    let k4 = tangent(h, &axpy(z, ds, &k3), s + ds)?;
    Some(
        (0..z.len())
            .map(|i| z[i] + (k1[i] + k2[i] * 2.0 + k3[i] * 2.0 + k4[i]) * (ds / 6.0))
            .collect(),
    )
}

/// Newton at fixed `s`; `None` unless corrections contract to tolerance.
fn correct(h: &Homotopy, mut z: Vec<Complex64>, s: f64, cfg: &TrackerConfig) -> Option<Vec<Complex64>> {
    let mut previous = f64::INFINITY;
    for iter in 0..cfg.max_corrector_iterations {
        let e = h.eval(&z, s);
        let delta = solve(e.jacobian, -e.values)?;
        let size = dvec_norm(&delta);
        let scale = 1.0 + norm(&z);
        if iter == 0 && size > 0.02 * scale {
            return None;
        }
        if iter > 0 && size > 0.25 * previous {
            return None;
        }
        for (zi, di) in z.iter_mut().zip(delta.iter()) {
            *zi += di;
        }
        if size <= cfg.newton_tolerance * scale {
            return Some(z);
        }
        previous = size;
    }
    None
}

/// Relative size of the homogenizing coordinate; tends to zero for paths
/// heading to infinity.
fn infinity_ratio(z: &[Complex64]) -> f64 {
    let k = z.len() - 1;
    let top = z.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if top == 0.0 {
        return 0.0;
    }
    z[k].norm() / top
}

fn dehomogenize(z: &[Complex64]) -> Vec<Complex64> {
    let k = z.len() - 1;
    z[..k].iter().map(|c| c / z[k]).collect()
}

/// Estimated exponent `w` in `ratio ~ s^w` between the last two checkpoints.
fn valuation(checkpoints: &[(f64, f64)]) -> Option<f64> {
    let n = checkpoints.len();
    if n < 2 {
        return None;
    }
    let (s0, r0) = checkpoints[n - 2];
    let (s1, r1) = checkpoints[n - 1];
    if r0 <= 0.0 || r1 <= 0.0 {
        return Some(f64::INFINITY);
    }
    Some((r1.ln() - r0.ln()) / (s1.ln() - s0.ln()))
}

fn heading_to_infinity(checkpoints: &[(f64, f64)]) -> bool {
    let n = checkpoints.len();
    if n < 4 {
        return false;
    }
    let w: Vec<f64> = (n - 2..=n)
        .map(|k| valuation(&checkpoints[..k]).unwrap_or(0.0))
        .collect();
    let stable = w.iter().all(|&x| x > 0.1) && (w[2] - w[1]).abs() <= 0.2 * w[2];
    stable && checkpoints[n - 1].1 < 1e-6
}

pub(crate) struct Refined {
    pub point: Vec<Complex64>,
    pub residual: f64,
    pub corrections: (f64, f64),
}

fn residual_of(h: &Homotopy, x: &[Complex64]) -> f64 {
    h.target_affine
        .values(x)
        .iter()
        .map(|v| v.norm())
        .fold(0.0, f64::max)
}

/// Newton on the affine target from `x`, tolerating the linear convergence
/// of singular roots; keeps the iterate with the smallest residual.
pub(crate) fn refine(h: &Homotopy, x: &[Complex64]) -> Refined {
    let mut cur = x.to_vec();
    let mut best = Refined {
        residual: residual_of(h, &cur),
        point: cur.clone(),
        corrections: (f64::NAN, f64::NAN),
    };
    let mut sizes = Vec::new();
    for _ in 0..REFINE_ITERATIONS {
        let (vals, jac) = h.target_affine.values_and_jacobian(&cur);
        let Some(delta) = solve(jac, -vals) else { break };
        let size = dvec_norm(&delta);
        sizes.push(size);
        for (c, d) in cur.iter_mut().zip(delta.iter()) {
            *c += d;
        }
        let r = residual_of(h, &cur);
        if r < best.residual {
            best.residual = r;
            best.point = cur.clone();
        }
        if size <= 1e-15 * (1.0 + norm(&cur)) || r == 0.0 {
            break;
        }
    }
    best.corrections = (
        sizes.first().copied().unwrap_or(0.0),
        sizes.get(1).copied().unwrap_or(0.0),
    );
    best
}

/// Tracks one path from `t = 0` (start root `start`) to `t = 1`.
pub fn track_path(
    h: &Homotopy,
    start: &[Complex64],
    cfg: &TrackerConfig,
    path_index: usize,
) -> TrackedSolution {
    let mut z = h.lift(start);
    let endgame_s = 1.0 - cfg.endgame_start;
    let mut s = 1.0_f64;
    let mut step = cfg.initial_step;
    let mut streak = 0;
    let mut steps = 0;
    let mut checkpoints: Vec<(f64, f64)> = Vec::new();
    let mut next_checkpoint = endgame_s;

    let finish = |status: PathStatus, point: Vec<Complex64>, residual: f64, s: f64, steps: usize, corr: (f64, f64)| {
        TrackedSolution {
            point,
            residual,
            status,
            cluster_id: None,
            cluster_size: 0,
            path_index,
            steps,
            t_end: 1.0 - s,
            newton_corrections: corr,
        }
    };

    let start_residual = h
        .start_system()
        .evaluate(start)
        .iter()
        .map(|v| v.norm())
        .fold(0.0, f64::max);
    if start_residual > cfg.newton_tolerance.max(1e-8) {
        return finish(PathStatus::Failed, start.to_vec(), start_residual, 1.0, 0, (f64::NAN, f64::NAN));
    }

    while s > 0.0 && s >= S_FLOOR {
        if steps >= MAX_STEPS {
            break;
        }
        let dt = step.min(s).min(MAX_STEP);
        let s_new = if dt >= s { 0.0 } else { s - dt };
        let accepted = rk4(h, &z, s, s_new - s).and_then(|zp| correct(h, zp, s_new, cfg));
        match accepted {
            Some(zn) => {
                z = zn;
                s = s_new;
                steps += 1;
                streak += 1;
                if streak >= 3 {
                    step = (dt * 2.0).min(MAX_STEP);
                    streak = 0;
                }
                let ratio = infinity_ratio(&z);
                if ratio * cfg.divergence_norm < 1.0 {
                    return finish(PathStatus::Diverged, dehomogenize(&z), f64::INFINITY, s, steps, (f64::NAN, f64::NAN));
                }
                if s > 0.0 && s <= next_checkpoint {
                    checkpoints.push((s, ratio));
                    next_checkpoint = s / 10.0;
                    if heading_to_infinity(&checkpoints) {
                        return finish(PathStatus::Diverged, dehomogenize(&z), f64::INFINITY, s, steps, (f64::NAN, f64::NAN));
                    }
                }
            }
            None => {
                step = dt / 2.0;
                streak = 0;
                let threshold = if s > endgame_s {
                    cfg.min_step
                } else {
                    cfg.min_step * s / endgame_s
                };
                if step < threshold {
                    break;
                }
            }
        }
    }

    let ratio = infinity_ratio(&z);
    if ratio * cfg.divergence_norm < 1.0 {
        return finish(PathStatus::Diverged, dehomogenize(&z), f64::INFINITY, s, steps, (f64::NAN, f64::NAN));
    }
    let x = dehomogenize(&z);
    let refined = refine(h, &x);
    let tolerance = cfg.newton_tolerance * (1.0 + h.coefficient_norm());
    let moved = norm(
        &refined
            .point
            .iter()
            .zip(&x)
            .map(|(a, b)| a - b)
            .collect::<Vec<_>>(),
    );
    let affine_norm = norm(&refined.point);
    if refined.residual < tolerance
        && moved <= 1e-2 * (1.0 + norm(&x))
        && affine_norm < cfg.divergence_norm
    {
        return finish(PathStatus::Converged, refined.point, refined.residual, s, steps, refined.corrections);
    }
    let w = valuation(&checkpoints).unwrap_or(0.0);
    if w > 0.05 || ratio < 1e-5 {
        return finish(PathStatus::Diverged, x, refined.residual, s, steps, refined.corrections);
    }
    finish(PathStatus::Failed, x, refined.residual, s, steps, refined.corrections)
}
