use rand::Rng;
use rand_distr::StandardNormal;

use super::{BoundaryRecord, Provenance};
use crate::error::Result;
use crate::linalg::random::random_hermitian;
use crate::linalg::{hermitian_eig, ComplexMatrix, C64};
use crate::metrics::MetricKind;
use crate::optimize::OptimizerConfig;
use crate::response::discord_of_response_with;
use crate::states::DensityMatrix;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HillClimbOptions {
    /// Used to score candidate moves.
    pub optimizer: OptimizerConfig,
    /// Used once on the final state for the reported discord.
    pub final_optimizer: OptimizerConfig,
    /// Multiplies the step after an accepted move.
    pub grow: f64,
    /// Multiplies the step after a rejected move.
    pub shrink: f64,
    pub min_step: f64,
    pub max_step: f64,
}

impl Default for HillClimbOptions {
    fn default() -> Self {
        Self {
            optimizer: OptimizerConfig::coarse(),
            final_optimizer: OptimizerConfig::default(),
            grow: 2.0,
            shrink: 0.7,
            min_step: 1e-4,
            max_step: 0.5,
        }
    }
}

/// Rescales the deviations of `values` from their mean by a common factor so
/// that `sum v^2 = target`. Where that would make entries negative they are
/// clipped at zero and the common offset lowered to keep `sum v = 1`.
pub fn project_to_purity(values: &[f64], target: f64) -> Vec<f64> {
    let mean = 1.0 / values.len() as f64;
    let at = |t: f64| {
        let y: Vec<f64> = values.iter().map(|x| t * (x - mean)).collect();
        let a = unit_sum_offset(&y);
        y.iter().map(|yi| (a + yi).max(0.0)).collect::<Vec<f64>>()
    };
    let purity = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>();
    let spread: f64 = values.iter().map(|x| (x - mean).powi(2)).sum();
    if spread == 0.0 {
        return at(0.0);
    }
    // Purity grows monotonically with the scale factor.
    let (mut lo, mut hi) = (0.0, 1.0);
    while purity(&at(hi)) < target && hi < 1e15 {
        lo = hi;
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if purity(&at(mid)) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    at(0.5 * (lo + hi))
}

/// The offset `a` with `sum max(0, a + y_i) = 1`.
fn unit_sum_offset(y: &[f64]) -> f64 {
    let mut sorted = y.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut partial = 0.0;
    let mut a = 0.0;
    for (k, yk) in sorted.iter().enumerate() {
        partial += yk;
        let candidate = (1.0 - partial) / (k + 1) as f64;
        if candidate + yk > 0.0 {
            a = candidate;
        } else {
            break;
        }
    }
    a
}

/// Greedy ascent in Bures discord at fixed purity.
pub fn hill_climb<R: Rng + ?Sized>(start: &DensityMatrix, steps: usize, step_size: f64, rng: &mut R) -> Result<BoundaryRecord> {
    hill_climb_with(start, steps, step_size, rng, &HillClimbOptions::default())
}

pub fn hill_climb_with<R: Rng + ?Sized>(
    start: &DensityMatrix,
    steps: usize,
    step_size: f64,
    rng: &mut R,
    opts: &HillClimbOptions,
) -> Result<BoundaryRecord> {
    let (da, db) = (start.dim_a(), start.dim_b());
    let n = start.dim();
    let target = start.purity();
    let eig = start.eigen();
    let mut spectrum = project_to_purity(&eig.values, target);
    let mut frame = eig.vectors;
    let mut value = discord_of_response_with(start, MetricKind::Bures, &opts.optimizer)?.value;
    // Eigenvector rotations keep the purity exactly; spectrum moves are
    // projected back onto it.
    let mut steps_by_kind = [step_size; 2];
    for _ in 0..steps {
        let kind = rng.random_range(0..2);
        let step = steps_by_kind[kind];
        let (new_spectrum, new_frame) = if kind == 0 {
            let h = random_hermitian(n, rng);
            let h = h.scale_real(step / h.frobenius_norm());
            (spectrum.clone(), &unitary_exp(&h)? * &frame)
        } else {
            let moved: Vec<f64> = spectrum
                .iter()
                .map(|x| x + step * rng.sample::<f64, _>(StandardNormal))
                .collect();
            (project_to_purity(&moved, target), frame.clone())
        };
        let m = ComplexMatrix::from_diagonal(&new_spectrum).conjugate_by(&new_frame);
        let candidate = DensityMatrix::from_dense(m.hermitian_part(), da, db)?;
        let d = discord_of_response_with(&candidate, MetricKind::Bures, &opts.optimizer)?.value;
        if d >= value {
            spectrum = new_spectrum;
            frame = new_frame;
            value = d;
            steps_by_kind[kind] = (step * opts.grow).min(opts.max_step);
        } else {
            steps_by_kind[kind] = (step * opts.shrink).max(opts.min_step);
        }
    }
    let m = ComplexMatrix::from_diagonal(&spectrum).conjugate_by(&frame);
    let end = DensityMatrix::from_dense(m.hermitian_part(), da, db)?;
    Ok(BoundaryRecord {
        purity: end.purity(),
        discord: discord_of_response_with(&end, MetricKind::Bures, &opts.final_optimizer)?.value,
        provenance: Provenance::HillClimbed,
        seed_index: 0,
    })
}

/// `exp(iH)` for Hermitian `H`.
fn unitary_exp(h: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(h)?;
    let n = eig.values.len();
    let mut out = ComplexMatrix::zeros(n, n);
    for (k, &v) in eig.values.iter().enumerate() {
        let phase = C64::from_polar(1.0, v);
        for i in 0..n {
            let w = eig.vectors[(i, k)] * phase;
            for j in 0..n {
                out[(i, j)] += w * eig.vectors[(j, k)].conj();
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{mq_family_b, random_state};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn projection_hits_target_purity() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for target in [0.26, 0.4, 0.6, 0.9] {
            let rho = random_state(2, 2, &mut rng);
            let v = project_to_purity(&rho.eigen().values, target);
            let p: f64 = v.iter().map(|x| x * x).sum();
            assert!((p - target).abs() < 1e-6, "{p} vs {target}");
            assert!((v.iter().sum::<f64>() - 1.0).abs() < 1e-12, "{v:?}");
            assert!(v.iter().all(|x| *x >= 0.0));
        }
    }

    #[test]
    fn maximally_mixed_stays_put() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let r = hill_climb(&DensityMatrix::maximally_mixed(2, 2), 10, 0.05, &mut rng).unwrap();
        assert!((r.purity - 0.25).abs() < 1e-12);
        assert!(r.discord < 1e-10);
    }

    #[test]
    fn plateau_state_stays_on_plateau() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let r = hill_climb(&mq_family_b(0.36).unwrap(), 15, 0.02, &mut rng).unwrap();
        assert!((r.discord - 1.0 / 3.0).abs() < 1e-4, "{}", r.discord);
        assert!((r.purity - 0.36).abs() < 1e-6);
    }
}
