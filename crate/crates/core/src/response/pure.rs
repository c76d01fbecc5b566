use super::axis_unitary;
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, C64};
use crate::optimize::{minimize_on_sphere, OptimizerConfig};
use crate::states::DensityMatrix;

const PURITY_TOL: f64 = 1e-10;

/// `1 - max_U |<psi| U (x) I |psi>|^2` over harmonic qubit unitaries `U`.
pub fn entanglement_of_response_pure(psi: &DensityMatrix) -> Result<f64> {
    psi.ensure_qubit_a()?;
    let purity = psi.purity();
    if (purity - 1.0).abs() > PURITY_TOL {
        return Err(Error::NotPure { purity });
    }
    let eig = psi.eigen();
    let v = eig.vectors.column(psi.dim() - 1);
    let id_b = ComplexMatrix::identity(psi.dim_b());
    let m = minimize_on_sphere(
        |n| {
            let u = axis_unitary(n).kron(&id_b);
            let uv = u.mul_vec(&v);
            let overlap: C64 = v.iter().zip(&uv).map(|(a, b)| a.conj() * b).sum();
            -overlap.norm_sqr()
        },
        &OptimizerConfig::default(),
    );
    Ok((1.0 + m.value).clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::pauli;
    use crate::metrics::MetricKind;
    use crate::response::discord_of_response;
    use crate::states::{bell_state, random_pure, random_state, BellState};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn product_and_singlet() {
        let product = DensityMatrix::from_dense(ComplexMatrix::from_diagonal(&[1.0, 0.0, 0.0, 0.0]), 2, 2).unwrap();
        assert!(entanglement_of_response_pure(&product).unwrap() < 1e-12);
        let singlet = bell_state(BellState::PsiMinus);
        assert!((entanglement_of_response_pure(&singlet).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_mixed_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(matches!(
            entanglement_of_response_pure(&random_state(2, 2, &mut rng)),
            Err(Error::NotPure { .. })
        ));
    }

    #[test]
    fn relation_to_discord_and_local_bloch_vector() {
        // For pure states both quantities depend only on the length r of A's Bloch vector:
        // E = 1 - r^2 and D = 1 - r.
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let psi = random_pure(2, 2, &mut rng);
            let rho_a = psi.partial_trace_b();
            let r = pauli()
                .iter()
                .map(|s| (&rho_a * s).trace().re.powi(2))
                .sum::<f64>()
                .sqrt();
            let e = entanglement_of_response_pure(&psi).unwrap();
            let d = discord_of_response(&psi, MetricKind::Bures).unwrap().value;
            assert!((e - (1.0 - r * r)).abs() < 1e-10);
            assert!((d - (1.0 - r)).abs() < 1e-8);
            assert!((d - (1.0 - (1.0 - e).sqrt())).abs() < 1e-8);
        }
    }
}
