use rand::Rng;

use super::cq::{classical_quantum, OrthonormalBasis};
use super::DensityMatrix;
use crate::linalg::random::simplex_point;
use crate::linalg::{haar_unitary, haar_vector, ComplexMatrix};

/// Random mixed state: uniform spectrum on the simplex, Haar eigenvectors.
pub fn random_state<R: Rng + ?Sized>(dim_a: usize, dim_b: usize, rng: &mut R) -> DensityMatrix {
    let d = dim_a * dim_b;
    let spectrum = simplex_point(d, rng);
    let u = haar_unitary(d, rng);
    let m = ComplexMatrix::from_diagonal(&spectrum).conjugate_by(&u);
    DensityMatrix::from_trusted(m, dim_a, dim_b)
}

/// Projector onto a Haar-random vector.
pub fn random_pure<R: Rng + ?Sized>(dim_a: usize, dim_b: usize, rng: &mut R) -> DensityMatrix {
    let v = haar_vector(dim_a * dim_b, rng);
    DensityMatrix::from_trusted(ComplexMatrix::outer(&v, &v), dim_a, dim_b)
}

/// Random classical-quantum state: Haar basis on A, simplex weights and
/// independent random conditional states on B.
pub fn random_classical_quantum<R: Rng + ?Sized>(dim_a: usize, dim_b: usize, rng: &mut R) -> DensityMatrix {
    let u = haar_unitary(dim_a, rng);
    let basis = OrthonormalBasis::new((0..dim_a).map(|j| u.column(j)).collect()).expect("Haar columns are orthonormal");
    let probs = simplex_point(dim_a, rng);
    let rho_b: Vec<DensityMatrix> = (0..dim_a).map(|_| random_state(dim_b, 1, rng)).collect();
    classical_quantum(&probs, &basis, &rho_b).expect("valid by construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::singular_values;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_states_validate() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for (a, b) in [(2, 2), (2, 3), (3, 2)] {
            for _ in 0..50 {
                let rho = random_state(a, b, &mut rng);
                assert!(DensityMatrix::from_dense(rho.into_matrix(), a, b).is_ok());
            }
        }
    }

    #[test]
    fn random_cq_states_are_block_diagonal_in_their_basis() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..20 {
            let rho = random_classical_quantum(2, 2, &mut rng);
            assert!(DensityMatrix::from_dense(rho.matrix().clone(), 2, 2).is_ok());
            // The reduced state of A commutes with the state's A-basis, so
            // dephasing A in the eigenbasis of rho_A leaves rho unchanged.
            let eig = crate::linalg::hermitian_eig(&rho.partial_trace_b()).unwrap();
            let v = eig.vectors.kron(&ComplexMatrix::identity(2));
            let m = rho.matrix().conjugate_by(&v.adjoint());
            for i in 0..2 {
                for j in 0..2 {
                    assert!(m[(i, 2 + j)].norm() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn reproducible_with_seed() {
        let a = random_state(2, 2, &mut ChaCha8Rng::seed_from_u64(77));
        let b = random_state(2, 2, &mut ChaCha8Rng::seed_from_u64(77));
        assert_eq!(a, b);
    }

    #[test]
    fn mean_purity_smoke() {
        // For simplex-uniform spectra E[tr rho^2] = 2 / (d + 1) = 0.4 when d = 4.
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let n = 10_000;
        let mean: f64 = (0..n).map(|_| random_state(2, 2, &mut rng).purity()).sum::<f64>() / n as f64;
        assert!((mean - 0.4).abs() < 0.08, "mean purity {mean}");
    }

    #[test]
    fn pure_states_have_unit_purity_and_schmidt_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for (a, b) in [(2, 2), (2, 3)] {
            let rho = random_pure(a, b, &mut rng);
            assert!((rho.purity() - 1.0).abs() < 1e-12);
            // Schmidt coefficients are the singular values of the reshaped state vector.
            let v = rho.eigen().vectors.column(a * b - 1);
            let coeffs = ComplexMatrix::from_row_major(a, b, v).unwrap();
            let nonzero = singular_values(&coeffs).unwrap().iter().filter(|s| **s > 1e-10).count();
            assert!(nonzero <= a.min(b));
        }
    }
}
