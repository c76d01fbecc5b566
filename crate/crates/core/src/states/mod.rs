//! Bipartite density matrices: validation, standard families and sampling.

mod bell;
mod channel;
mod cq;
mod families;
pub mod file;
mod sampling;

pub use bell::{bell_diagonal, bell_state, bell_vector, werner, BellDiagonalSpectrum, BellState, WernerParameter};
pub use channel::{apply_channel_b, random_channel_b};
pub use cq::{classical_quantum, OrthonormalBasis};
pub use families::{mq_family, mq_family_b, mq_family_c, mq_family_c_psd_limit, mq_family_d, MqFamily};
pub use sampling::{random_classical_quantum, random_pure, random_state};

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, hermitian_eigenvalues, psd_sqrt, ComplexMatrix, EigenDecomposition, C64, ZERO};
use crate::tolerance::Tolerances;

/// A validated density matrix on `C^dim_a (x) C^dim_b`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    dim_a: usize,
    dim_b: usize,
}

impl DensityMatrix {
    /// Validates `m` as a state with bipartition `(dim_a, dim_b)` using the default tolerances.
    pub fn from_dense(m: ComplexMatrix, dim_a: usize, dim_b: usize) -> Result<Self> {
        Self::from_dense_with(m, dim_a, dim_b, &Tolerances::default())
    }

    pub fn from_dense_with(m: ComplexMatrix, dim_a: usize, dim_b: usize, tol: &Tolerances) -> Result<Self> {
        let n = m.ensure_square()?;
        if dim_a == 0 || dim_b == 0 || dim_a * dim_b != n {
            return Err(Error::DimensionMismatch {
                expected: dim_a * dim_b,
                found: n,
            });
        }
        let residual = m.hermiticity_residual();
        if residual > tol.state {
            return Err(Error::NonHermitian { residual });
        }
        let m = m.hermitian_part();
        let trace = m.trace().re;
        if (trace - 1.0).abs() > tol.state {
            return Err(Error::NotUnitTrace {
                trace,
                residual: (trace - 1.0).abs(),
            });
        }
        let min = hermitian_eigenvalues(&m)?[0];
        if min < -tol.state {
            return Err(Error::NotPsd { min_eigenvalue: min });
        }
        Ok(Self {
            matrix: m,
            dim_a,
            dim_b,
        })
    }

    /// A state of a single system, stored with the trivial bipartition `(d, 1)`.
    pub fn single(m: ComplexMatrix) -> Result<Self> {
        let n = m.ensure_square()?;
        Self::from_dense(m, n, 1)
    }

    /// Builds a state from a matrix that is correct by construction.
    pub(crate) fn from_trusted(m: ComplexMatrix, dim_a: usize, dim_b: usize) -> Self {
        debug_assert_eq!(m.rows(), dim_a * dim_b);
        Self {
            matrix: m.hermitian_part(),
            dim_a,
            dim_b,
        }
    }

    /// `|psi><psi|` for a normalized vector.
    pub fn pure(psi: &[C64], dim_a: usize, dim_b: usize) -> Result<Self> {
        let norm2: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        if psi.len() != dim_a * dim_b {
            return Err(Error::DimensionMismatch {
                expected: dim_a * dim_b,
                found: psi.len(),
            });
        }
        if (norm2 - 1.0).abs() > Tolerances::default().state {
            return Err(Error::NotUnitTrace {
                trace: norm2,
                residual: (norm2 - 1.0).abs(),
            });
        }
        Ok(Self::from_trusted(ComplexMatrix::outer(psi, psi), dim_a, dim_b))
    }

    pub fn maximally_mixed(dim_a: usize, dim_b: usize) -> Self {
        let n = dim_a * dim_b;
        Self::from_trusted(ComplexMatrix::identity(n).scale_real(1.0 / n as f64), dim_a, dim_b)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.dim_a * self.dim_b
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    pub fn purity(&self) -> f64 {
        purity(self)
    }

    pub fn eigen(&self) -> EigenDecomposition {
        hermitian_eig(&self.matrix).expect("density matrices are Hermitian")
    }

    pub fn sqrt(&self) -> ComplexMatrix {
        psd_sqrt(&self.matrix).expect("density matrices are positive semidefinite")
    }

    /// `tr_A rho`, a `dim_b x dim_b` matrix.
    pub fn partial_trace_a(&self) -> ComplexMatrix {
        let (da, db) = (self.dim_a, self.dim_b);
        let mut out = ComplexMatrix::zeros(db, db);
        for a in 0..da {
            for i in 0..db {
                for j in 0..db {
                    out[(i, j)] += self.matrix[(a * db + i, a * db + j)];
                }
            }
        }
        out
    }

    /// `tr_B rho`, a `dim_a x dim_a` matrix.
    pub fn partial_trace_b(&self) -> ComplexMatrix {
        let (da, db) = (self.dim_a, self.dim_b);
        let mut out = ComplexMatrix::zeros(da, da);
        for i in 0..da {
            for j in 0..da {
                let mut s = ZERO;
                for b in 0..db {
                    s += self.matrix[(i * db + b, j * db + b)];
                }
                out[(i, j)] = s;
            }
        }
        out
    }

    pub fn ensure_same_shape(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }

    pub fn ensure_qubit_a(&self) -> Result<()> {
        if self.dim_a != 2 {
            return Err(Error::UnsupportedDimension { dim_a: self.dim_a });
        }
        Ok(())
    }
}

/// `tr(rho^2)`.
pub fn purity(rho: &DensityMatrix) -> f64 {
    // For Hermitian rho, tr(rho^2) is the squared Frobenius norm.
    rho.matrix.as_slice().iter().map(|z| z.norm_sqr()).sum()
}

/// Validates a square matrix.
pub fn from_dense(m: ComplexMatrix, dim_a: usize, dim_b: usize) -> Result<DensityMatrix> {
    DensityMatrix::from_dense(m, dim_a, dim_b)
}

fn check_unitary(u: &ComplexMatrix, dim: usize) -> Result<()> {
    let n = u.ensure_square()?;
    if n != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: n,
        });
    }
    let residual = u.unitarity_residual();
    if residual > Tolerances::default().unitary {
        return Err(Error::NotUnitary { residual });
    }
    Ok(())
}

/// `(U_A (x) I_B) rho (U_A (x) I_B)^dag`.
pub fn apply_local_unitary(rho: &DensityMatrix, u_a: &ComplexMatrix) -> Result<DensityMatrix> {
    check_unitary(u_a, rho.dim_a)?;
    let full = u_a.kron(&ComplexMatrix::identity(rho.dim_b));
    Ok(DensityMatrix::from_trusted(
        rho.matrix.conjugate_by(&full),
        rho.dim_a,
        rho.dim_b,
    ))
}

/// `(U_A (x) U_B) rho (U_A (x) U_B)^dag`.
pub fn apply_local_unitaries(rho: &DensityMatrix, u_a: &ComplexMatrix, u_b: &ComplexMatrix) -> Result<DensityMatrix> {
    check_unitary(u_a, rho.dim_a)?;
    check_unitary(u_b, rho.dim_b)?;
    let full = u_a.kron(u_b);
    Ok(DensityMatrix::from_trusted(
        rho.matrix.conjugate_by(&full),
        rho.dim_a,
        rho.dim_b,
    ))
}
