//! Dense complex linear algebra for the small matrices (d <= 8) used throughout.

mod eigen;
mod matrix;
pub mod random;
mod schur;
mod svd;

pub use eigen::{hermitian_eig, hermitian_eig_with, hermitian_eigenvalues, EigenDecomposition};
pub(crate) use eigen::hermitian_eigenvalues_into;
pub use matrix::{pauli, ComplexMatrix, C64};
pub(crate) use matrix::ZERO;
pub use random::{haar_unitary, haar_vector};
pub use schur::general_eigenvalues;
pub use svd::{singular_values, trace_norm};

use crate::error::{Error, Result};
use crate::tolerance::PSD_CLAMP_TOL;

/// Positive semidefinite square root of a Hermitian matrix.
///
/// Eigenvalues in `[-1e-12, 0)` are clamped to zero; anything more negative
/// is rejected. Eigenvalues below the round-off floor of the solver are also
/// zeroed, otherwise their square roots would leak `~1e-8` noise.
pub fn psd_sqrt(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    psd_sqrt_with(m, PSD_CLAMP_TOL)
}

pub fn psd_sqrt_with(m: &ComplexMatrix, clamp_tol: f64) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(m)?;
    let min = eig.values.first().copied().unwrap_or(0.0);
    if min < -clamp_tol {
        return Err(Error::NotPsd { min_eigenvalue: min });
    }
    let floor = round_off_floor(&eig.values);
    Ok(eig.map_values(|v| if v > floor { v.sqrt() } else { 0.0 }))
}

/// Eigenvalues of magnitude below this are indistinguishable from round-off.
pub(crate) fn round_off_floor(values: &[f64]) -> f64 {
    let scale = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    values.len() as f64 * f64::EPSILON * scale
}
