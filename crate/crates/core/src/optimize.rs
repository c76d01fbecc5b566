//! Derivative-free minimization: Nelder-Mead and a grid-seeded search over
//! the unit sphere of rotation axes.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::tolerance::OPTIMIZER_FTOL;

/// Environment variable that overrides the default objective-spread tolerance.
pub const TOLERANCE_ENV: &str = "DISCORD_LAB_TOL";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NelderMeadOptions {
    /// Stop once `max f - min f` over the simplex drops below this.
    pub ftol: f64,
    pub max_iter: usize,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        Self {
            ftol: OPTIMIZER_FTOL,
            max_iter: 500,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub evals: usize,
    pub converged: bool,
}

/// Nelder-Mead with the standard coefficients (1, 2, 1/2, 1/2), started from
/// an axis-aligned simplex around `x0` with edge lengths `step`.
pub fn nelder_mead<F>(mut f: F, x0: &[f64], step: &[f64], opts: &NelderMeadOptions) -> Minimum
where
    F: FnMut(&[f64]) -> f64,
{
    let n = x0.len();
    assert_eq!(step.len(), n, "one step per coordinate");
    let mut evals = 0usize;
    let mut eval = |x: &[f64], evals: &mut usize| {
        *evals += 1;
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };

    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    simplex.push(x0.to_vec());
    for i in 0..n {
        let mut x = x0.to_vec();
        x[i] += step[i];
        simplex.push(x);
    }
    let mut values: Vec<f64> = simplex.iter().map(|x| eval(x, &mut evals)).collect();
    let mut order: Vec<usize> = (0..=n).collect();
    let mut centroid = vec![0.0; n];
    let mut trial = vec![0.0; n];
    let mut trial2 = vec![0.0; n];

    let mut converged = false;
    for _ in 0..opts.max_iter {
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        let (best, worst, second) = (order[0], order[n], order[n.saturating_sub(1)]);
        if values[worst] - values[best] < opts.ftol {
            converged = true;
            break;
        }
        centroid.iter_mut().for_each(|c| *c = 0.0);
        for &i in &order[..n] {
            for (c, x) in centroid.iter_mut().zip(&simplex[i]) {
                *c += x / n as f64;
            }
        }
        let towards = |coef: f64, out: &mut Vec<f64>, simplex: &[Vec<f64>], centroid: &[f64]| {
            for k in 0..n {
                out[k] = centroid[k] + coef * (simplex[worst][k] - centroid[k]);
            }
        };

        towards(-1.0, &mut trial, &simplex, &centroid);
        let fr = eval(&trial, &mut evals);
        if fr < values[best] {
            towards(-2.0, &mut trial2, &simplex, &centroid);
            let fe = eval(&trial2, &mut evals);
            if fe < fr {
                simplex[worst].copy_from_slice(&trial2);
                values[worst] = fe;
            } else {
                simplex[worst].copy_from_slice(&trial);
                values[worst] = fr;
            }
            continue;
        }
        if fr < values[second] {
            simplex[worst].copy_from_slice(&trial);
            values[worst] = fr;
            continue;
        }
        let (coef, bound) = if fr < values[worst] { (-0.5, fr) } else { (0.5, values[worst]) };
        towards(coef, &mut trial2, &simplex, &centroid);
        let fc = eval(&trial2, &mut evals);
        if fc < bound {
            simplex[worst].copy_from_slice(&trial2);
            values[worst] = fc;
            continue;
        }
        let anchor = simplex[best].clone();
        for &i in &order[1..] {
            for k in 0..n {
                simplex[i][k] = anchor[k] + 0.5 * (simplex[i][k] - anchor[k]);
            }
            values[i] = eval(&simplex[i], &mut evals);
        }
    }
    let best = (0..=n).min_by(|&a, &b| values[a].total_cmp(&values[b])).unwrap_or(0);
    Minimum {
        x: simplex.swap_remove(best),
        value: values[best],
        evals,
        converged,
    }
}

/// Settings for minimizing a function of a unit vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerConfig {
    /// Grid points in the polar angle over `[0, pi]`.
    pub grid_theta: usize,
    /// Grid points in the azimuth over `[0, pi)`; the objectives of interest
    /// are even in the axis, so the other half of the sphere is redundant.
    pub grid_phi: usize,
    /// Number of best grid points refined by Nelder-Mead.
    pub refine_from: usize,
    pub nelder_mead: NelderMeadOptions,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            grid_theta: 64,
            grid_phi: 32,
            refine_from: 5,
            nelder_mead: NelderMeadOptions::default(),
        }
    }
}

impl OptimizerConfig {
    /// Default configuration with the tolerance taken from `DISCORD_LAB_TOL` if set.
    pub fn from_env() -> Result<Self> {
        let mut cfg = Self::default();
        if let Ok(raw) = std::env::var(TOLERANCE_ENV) {
            let tol: f64 = raw
                .trim()
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("{TOLERANCE_ENV}={raw} is not a number")))?;
            if !(tol.is_finite() && tol > 0.0) {
                return Err(Error::InvalidArgument(format!("{TOLERANCE_ENV} must be positive")));
            }
            cfg.nelder_mead.ftol = tol;
        }
        Ok(cfg)
    }

    /// A coarser grid, used where many optimizations run back to back.
    pub fn coarse() -> Self {
        Self {
            grid_theta: 16,
            grid_phi: 8,
            refine_from: 3,
            ..Self::default()
        }
    }
}

/// `(sin t cos p, sin t sin p, cos t)`.
pub fn axis(theta: f64, phi: f64) -> [f64; 3] {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    [st * cp, st * sp, ct]
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereMinimum {
    pub theta: f64,
    pub phi: f64,
    pub value: f64,
    pub evals: usize,
    pub converged: bool,
}

/// Minimizes `f(n)` over unit vectors `n`: grid search, then Nelder-Mead in
/// `(theta, phi)` from the best grid points. The returned angles are
/// normalized to `theta in [0, pi]`, `phi in [0, 2 pi)`.
pub fn minimize_on_sphere<F>(mut f: F, cfg: &OptimizerConfig) -> SphereMinimum
where
    F: FnMut([f64; 3]) -> f64,
{
    let nt = cfg.grid_theta.max(2);
    let np = cfg.grid_phi.max(1);
    let mut evals = 0usize;
    let mut grid: Vec<(f64, f64, f64)> = Vec::with_capacity(nt * np);
    for i in 0..nt {
        let theta = PI * i as f64 / (nt - 1) as f64;
        // The poles need one sample only.
        let phis = if i == 0 || i == nt - 1 { 1 } else { np };
        for j in 0..phis {
            let phi = PI * j as f64 / np as f64;
            evals += 1;
            let v = f(axis(theta, phi));
            grid.push((if v.is_nan() { f64::INFINITY } else { v }, theta, phi));
        }
    }
    grid.sort_by(|a, b| a.0.total_cmp(&b.0));

    let step = [PI / (nt - 1) as f64, PI / np as f64];
    let mut best = SphereMinimum {
        theta: grid[0].1,
        phi: grid[0].2,
        value: grid[0].0,
        evals: 0,
        converged: false,
    };
    for &(_, theta, phi) in grid.iter().take(cfg.refine_from.max(1)) {
        let m = nelder_mead(|x| f(axis(x[0], x[1])), &[theta, phi], &step, &cfg.nelder_mead);
        evals += m.evals;
        if m.value < best.value || (m.value == best.value && m.converged && !best.converged) {
            best = SphereMinimum {
                theta: m.x[0],
                phi: m.x[1],
                value: m.value,
                evals: 0,
                converged: m.converged,
            };
        }
    }
    let (theta, phi) = normalize_angles(best.theta, best.phi);
    SphereMinimum {
        theta,
        phi,
        evals,
        ..best
    }
}

/// Maps any `(theta, phi)` to the equivalent point with `theta in [0, pi]`, `phi in [0, 2 pi)`.
pub fn normalize_angles(theta: f64, phi: f64) -> (f64, f64) {
    let mut t = theta.rem_euclid(2.0 * PI);
    let mut p = phi;
    if t > PI {
        t = 2.0 * PI - t;
        p += PI;
    }
    let mut p = p.rem_euclid(2.0 * PI);
    if p >= 2.0 * PI {
        p = 0.0;
    }
    (t, p)
}
