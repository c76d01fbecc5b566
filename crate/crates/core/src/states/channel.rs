use rand::Rng;

use super::DensityMatrix;
use crate::error::{Error, Result};
use crate::linalg::{haar_unitary, ComplexMatrix};

const COMPLETENESS_TOL: f64 = 1e-10;

/// Applies `I_A (x) Phi` where `Phi(X) = sum_k K_k X K_k^dag` acts on B.
pub fn apply_channel_b(rho: &DensityMatrix, kraus: &[ComplexMatrix]) -> Result<DensityMatrix> {
    let db = rho.dim_b();
    if kraus.is_empty() {
        return Err(Error::InvalidArgument("channel needs at least one Kraus operator".into()));
    }
    let mut completeness = ComplexMatrix::zeros(db, db);
    for k in kraus {
        if k.rows() != db || k.cols() != db {
            return Err(Error::DimensionMismatch {
                expected: db,
                found: k.rows().max(k.cols()),
            });
        }
        completeness = &completeness + &(&k.adjoint() * k);
    }
    let residual = completeness.max_abs_diff(&ComplexMatrix::identity(db));
    if residual > COMPLETENESS_TOL {
        return Err(Error::InvalidArgument(format!(
            "Kraus operators are not trace preserving (residual {residual:e})"
        )));
    }
    let id_a = ComplexMatrix::identity(rho.dim_a());
    let mut out = ComplexMatrix::zeros(rho.dim(), rho.dim());
    for k in kraus {
        out = &out + &rho.matrix().conjugate_by(&id_a.kron(k));
    }
    Ok(DensityMatrix::from_trusted(out, rho.dim_a(), rho.dim_b()))
}

/// Kraus operators of a random channel on a `dim_b`-level system, taken from
/// the first `dim_b` columns of a Haar unitary on `dim_b * n_kraus` levels.
pub fn random_channel_b<R: Rng + ?Sized>(dim_b: usize, n_kraus: usize, rng: &mut R) -> Vec<ComplexMatrix> {
    assert!(dim_b >= 1 && n_kraus >= 1);
    let u = haar_unitary(dim_b * n_kraus, rng);
    (0..n_kraus)
        .map(|k| {
            let mut m = ComplexMatrix::zeros(dim_b, dim_b);
            for i in 0..dim_b {
                for j in 0..dim_b {
                    m[(i, j)] = u[(k * dim_b + i, j)];
                }
            }
            m
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{random_state, BellState, bell_state};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_channels_are_trace_preserving() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..4 {
            let kraus = random_channel_b(2, n, &mut rng);
            let rho = random_state(2, 2, &mut rng);
            let out = apply_channel_b(&rho, &kraus).unwrap();
            assert!((out.matrix().trace().re - 1.0).abs() < 1e-12);
            assert!(DensityMatrix::from_dense(out.into_matrix(), 2, 2).is_ok());
        }
    }

    #[test]
    fn full_dephasing_of_singlet() {
        let p0 = ComplexMatrix::from_diagonal(&[1.0, 0.0]);
        let p1 = ComplexMatrix::from_diagonal(&[0.0, 1.0]);
        let out = apply_channel_b(&bell_state(BellState::PsiMinus), &[p0, p1]).unwrap();
        let expected = ComplexMatrix::from_diagonal(&[0.0, 0.5, 0.5, 0.0]);
        assert!(out.matrix().max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn rejects_non_trace_preserving() {
        let half = ComplexMatrix::identity(2).scale_real(0.5);
        assert!(apply_channel_b(&bell_state(BellState::PsiMinus), &[half]).is_err());
    }
}
