//! Numerical tolerances shared across the crate.
//!
//! Every routine that validates input or clamps round-off uses the values in
//! [`Tolerances::default`] unless a caller passes its own set through the
//! corresponding `*_with` entry point.

/// Entrywise Hermiticity tolerance for raw matrices handed to eigensolvers.
pub const HERMITIAN_INPUT_TOL: f64 = 1e-10;
/// Eigenvalues down to `-PSD_CLAMP_TOL` are treated as round-off and clamped.
pub const PSD_CLAMP_TOL: f64 = 1e-12;
/// Hermiticity, unit trace and positivity tolerance for density matrices.
pub const STATE_TOL: f64 = 1e-10;
/// Unitarity residual accepted for user-supplied unitaries.
pub const UNITARY_TOL: f64 = 1e-10;
/// Objective-spread convergence threshold of the local optimizer.
pub const OPTIMIZER_FTOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub hermitian: f64,
    pub psd_clamp: f64,
    pub state: f64,
    pub unitary: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            hermitian: HERMITIAN_INPUT_TOL,
            psd_clamp: PSD_CLAMP_TOL,
            state: STATE_TOL,
            unitary: UNITARY_TOL,
        }
    }
}
