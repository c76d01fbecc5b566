use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues_into, round_off_floor, ComplexMatrix, C64, ZERO};
use crate::optimize::{axis, nelder_mead, NelderMeadOptions};
use crate::states::{DensityMatrix, OrthonormalBasis};

const HALTON_PRIMES: [u32; 9] = [2, 3, 5, 7, 11, 13, 17, 19, 23];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometricOptions {
    pub restarts: usize,
    pub nelder_mead: NelderMeadOptions,
}

impl Default for GeometricOptions {
    fn default() -> Self {
        Self {
            restarts: 32,
            nelder_mead: NelderMeadOptions {
                ftol: 1e-13,
                max_iter: 4000,
            },
        }
    }
}

/// A classical-quantum state `p |e1><e1| (x) s1 + (1 - p) |e2><e2| (x) s2`,
/// with `{e1, e2}` the eigenbasis of `n(theta, phi) . sigma` and `s1`, `s2`
/// qubit states given by their Bloch vectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CqParameters {
    pub theta: f64,
    pub phi: f64,
    pub p: f64,
    pub bloch_1: [f64; 3],
    pub bloch_2: [f64; 3],
}

impl CqParameters {
    fn from_raw(x: &[f64]) -> Self {
        let bloch = |r: f64, a: f64, b: f64| {
            let len = r.sin().abs();
            axis(a, b).map(|c| len * c)
        };
        Self {
            theta: x[0],
            phi: x[1],
            p: x[2].sin().powi(2),
            bloch_1: bloch(x[3], x[4], x[5]),
            bloch_2: bloch(x[6], x[7], x[8]),
        }
    }

    pub fn state(&self) -> DensityMatrix {
        DensityMatrix::from_trusted(self.matrix(), 2, 2)
    }

    fn matrix(&self) -> ComplexMatrix {
        let basis = OrthonormalBasis::qubit(self.theta, self.phi);
        let e = basis.vectors();
        let qubit = |b: [f64; 3]| {
            let mut m = ComplexMatrix::zeros(2, 2);
            m[(0, 0)] = C64::new(0.5 * (1.0 + b[2]), 0.0);
            m[(1, 1)] = C64::new(0.5 * (1.0 - b[2]), 0.0);
            m[(0, 1)] = C64::new(0.5 * b[0], -0.5 * b[1]);
            m[(1, 0)] = C64::new(0.5 * b[0], 0.5 * b[1]);
            m
        };
        let first = ComplexMatrix::outer(&e[0], &e[0]).kron(&qubit(self.bloch_1)).scale_real(self.p);
        let second = ComplexMatrix::outer(&e[1], &e[1]).kron(&qubit(self.bloch_2)).scale_real(1.0 - self.p);
        &first + &second
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometricDiscordResult {
    pub value: f64,
    pub argmax_cq: CqParameters,
    pub restarts_used: usize,
}

/// Bures geometric discord `2 / (2 - sqrt 2) (1 - max sqrt F(rho, chi))`, the
/// maximum taken over classical-quantum `chi` by multi-start Nelder-Mead.
pub fn geometric_discord_bures(rho: &DensityMatrix) -> Result<GeometricDiscordResult> {
    geometric_discord_bures_with(rho, &GeometricOptions::default())
}

pub fn geometric_discord_bures_with(rho: &DensityMatrix, opts: &GeometricOptions) -> Result<GeometricDiscordResult> {
    if rho.dim_a() != 2 || rho.dim_b() != 2 {
        return Err(Error::UnsupportedDimension { dim_a: rho.dim_a() });
    }
    let sqrt_rho = rho.sqrt();
    let mut scratch = [ZERO; 16];
    let mut ev = [0.0; 4];
    let mut neg_root_fidelity = |x: &[f64]| {
        let chi = CqParameters::from_raw(x).matrix();
        let m = chi.conjugate_by(&sqrt_rho);
        scratch.copy_from_slice(m.as_slice());
        hermitian_eigenvalues_into(&mut scratch, 4, &mut ev).expect("Hermitian by construction");
        let floor = round_off_floor(&ev);
        -ev.iter().filter(|v| **v > floor).map(|v| v.sqrt()).sum::<f64>()
    };

    let spans = [PI, 2.0 * PI, FRAC_PI_2, FRAC_PI_2, PI, 2.0 * PI, FRAC_PI_2, PI, 2.0 * PI];
    let coarse_step: Vec<f64> = spans.iter().map(|s| s / 4.0).collect();
    let fine_step: Vec<f64> = spans.iter().map(|s| s / 64.0).collect();
    let mut best: Option<(f64, Vec<f64>)> = None;
    for i in 0..opts.restarts.max(1) {
        let start: Vec<f64> = HALTON_PRIMES
            .iter()
            .zip(spans)
            .map(|(&b, span)| halton(i as u64 + 1, b) * span)
            .collect();
        let first = nelder_mead(&mut neg_root_fidelity, &start, &coarse_step, &opts.nelder_mead);
        let polished = nelder_mead(&mut neg_root_fidelity, &first.x, &fine_step, &opts.nelder_mead);
        let candidate = if polished.value <= first.value { polished } else { first };
        if !candidate.value.is_finite() {
            continue;
        }
        if best.as_ref().is_none_or(|(v, _)| candidate.value < *v) {
            best = Some((candidate.value, candidate.x));
        }
    }
    let (neg, x) = best.ok_or(Error::OptimizerFailure {
        restarts: opts.restarts,
    })?;
    let root_fidelity = (-neg).clamp(0.0, 1.0);
    Ok(GeometricDiscordResult {
        value: (2.0 / (2.0 - SQRT_2) * (1.0 - root_fidelity)).clamp(0.0, 1.0),
        argmax_cq: CqParameters::from_raw(&x),
        restarts_used: opts.restarts.max(1),
    })
}

/// Radical inverse of `index` in base `base`.
fn halton(mut index: u64, base: u32) -> f64 {
    let b = base as u64;
    let mut f = 1.0;
    let mut r = 0.0;
    while index > 0 {
        f /= base as f64;
        r += f * (index % b) as f64;
        index /= b;
    }
    r
}
