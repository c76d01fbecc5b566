use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{BoundaryRecord, Provenance};
use crate::error::{Error, Result};
use crate::metrics::MetricKind;
use crate::optimize::OptimizerConfig;
use crate::response::discord_of_response_with;
use crate::states::{random_state, DensityMatrix};

/// The random two-qubit state for sample `index` of the scan seeded with `seed`.
///
/// Every sample owns its generator stream, so results do not depend on how
/// samples are distributed over threads.
pub fn sample_state(seed: u64, index: u64) -> DensityMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    random_state(2, 2, &mut rng)
}

fn record(seed: u64, index: u64, cfg: &OptimizerConfig) -> Result<BoundaryRecord> {
    let rho = sample_state(seed, index);
    let d = discord_of_response_with(&rho, MetricKind::Bures, cfg)?;
    Ok(BoundaryRecord {
        purity: rho.purity(),
        discord: d.value,
        provenance: Provenance::Random,
        seed_index: index,
    })
}

/// Bures discord of response of `n` random two-qubit states, in index order,
/// on the global thread pool.
pub fn scan(n: usize, seed: u64) -> Result<Vec<BoundaryRecord>> {
    scan_with(n, seed, None, &OptimizerConfig::default())
}

/// As [`scan`] on a dedicated pool of `threads` workers.
pub fn scan_with_threads(n: usize, seed: u64, threads: usize) -> Result<Vec<BoundaryRecord>> {
    scan_with(n, seed, Some(threads), &OptimizerConfig::default())
}

/// As [`scan`], optionally on a dedicated pool and with a given optimizer.
pub fn scan_with(n: usize, seed: u64, threads: Option<usize>, cfg: &OptimizerConfig) -> Result<Vec<BoundaryRecord>> {
    let run = || (0..n as u64).into_par_iter().map(|i| record(seed, i, cfg)).collect();
    match threads {
        None => run(),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build()
            .map_err(|e| Error::InvalidArgument(format!("cannot start worker pool: {e}")))?
            .install(run),
    }
}
