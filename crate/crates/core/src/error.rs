use thiserror::Error;

/// Errors produced by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian: max |H_ij - conj(H_ji)| = {residual:.3e}")]
    NonHermitian { residual: f64 },

    #[error("matrix is not positive semidefinite: smallest eigenvalue {min_eigenvalue:.3e}")]
    NotPsd { min_eigenvalue: f64 },

    #[error("trace is {trace:.12}, expected 1 (residual {residual:.3e})")]
    NotUnitTrace { trace: f64, residual: f64 },

    #[error("matrix is not unitary: max |U^dag U - I| = {residual:.3e}")]
    NotUnitary { residual: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix contains a non-finite entry")]
    NonFinite,

    #[error("eigenvalue iteration did not converge within {iterations} iterations")]
    ConvergenceFailure { iterations: usize },

    #[error("invalid Bell-diagonal spectrum: {0}")]
    InvalidSpectrum(String),

    #[error("invalid probabilities: {0}")]
    InvalidProbabilities(String),

    #[error("{name} = {value} is outside [{lo}, {hi}]")]
    OutOfRange {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("purity {purity} is outside the region [{lo}, {hi}] of family {family}")]
    OutOfRegion {
        family: &'static str,
        purity: f64,
        lo: f64,
        hi: f64,
    },

    #[error("state is not pure: purity {purity:.12}")]
    NotPure { purity: f64 },

    #[error("only a qubit perturbed subsystem is supported, got dim_a = {dim_a}")]
    UnsupportedDimension { dim_a: usize },

    #[error("optimizer failed to converge after {restarts} restarts")]
    OptimizerFailure { restarts: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
