//! Discord of response and related measures for a qubit A.

mod bell;
mod geometric;
mod pure;

pub use bell::{
    bell_diagonal_discord, bell_diagonal_minimizer, bell_stationary_angles, bell_trace_norm_sum, bell_z, werner_discord, werner_discord_vs_purity, WernerBranch,
};
pub use geometric::{geometric_discord_bures, geometric_discord_bures_with, CqParameters, GeometricDiscordResult, GeometricOptions};
pub use pure::entanglement_of_response_pure;

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linalg::{general_eigenvalues, hermitian_eigenvalues_into, pauli, ComplexMatrix, C64, ZERO};
use crate::metrics::{distance, MetricKind};
use crate::optimize::{axis, minimize_on_sphere, normalize_angles, OptimizerConfig};
use crate::states::DensityMatrix;

/// Rotation axis `n = (sin t cos p, sin t sin p, cos t)` of the local unitary `n . sigma`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalUnitaryAngles {
    theta: f64,
    phi: f64,
}

impl LocalUnitaryAngles {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) {
            return Err(Error::OutOfRange {
                name: "theta",
                value: theta,
                lo: 0.0,
                hi: PI,
            });
        }
        if !(0.0..2.0 * PI).contains(&phi) {
            return Err(Error::OutOfRange {
                name: "phi",
                value: phi,
                lo: 0.0,
                hi: 2.0 * PI,
            });
        }
        Ok(Self { theta, phi })
    }

    /// Accepts any finite angles and maps them to the canonical ranges.
    pub fn normalized(theta: f64, phi: f64) -> Self {
        let (theta, phi) = normalize_angles(theta, phi);
        Self { theta, phi }
    }

    pub fn theta(self) -> f64 {
        self.theta
    }

    pub fn phi(self) -> f64 {
        self.phi
    }

    pub fn axis(self) -> [f64; 3] {
        axis(self.theta, self.phi)
    }
}

/// `n . sigma`: Hermitian, unitary, with eigenvalues `+1, -1`.
pub fn unitary_from_angles(a: LocalUnitaryAngles) -> ComplexMatrix {
    axis_unitary(a.axis())
}

pub(crate) fn axis_unitary(n: [f64; 3]) -> ComplexMatrix {
    let [sx, sy, sz] = pauli();
    &(&sx.scale_real(n[0]) + &sy.scale_real(n[1])) + &sz.scale_real(n[2])
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscordResult {
    pub metric: MetricKind,
    pub value: f64,
    pub argmin: LocalUnitaryAngles,
    pub objective_evals: usize,
    pub converged: bool,
}

/// The objective `N^-1 d^2(rho, U rho U^dag)` as a function of the axis,
/// with everything that does not depend on the axis precomputed.
pub struct ResponseObjective {
    dim: usize,
    kind: Prepared,
    scratch: Vec<C64>,
    values: Vec<f64>,
}

enum Prepared {
    /// `X_k = sqrt(rho) (sigma_k (x) I) sqrt(rho)`; the response is `1 - ||sum n_k X_k||_1`.
    Bures([Vec<C64>; 3]),
    /// Quadratic form `G_jk = tr(S Sigma_j S Sigma_k)` with `S = sqrt(rho)`.
    Hellinger([[f64; 3]; 3]),
    /// `rho` and the symmetrized products `Sigma_j rho Sigma_k + Sigma_k rho Sigma_j`.
    Trace {
        rho: Vec<C64>,
        products: [[Vec<C64>; 3]; 3],
    },
}

impl ResponseObjective {
    pub fn new(rho: &DensityMatrix, metric: MetricKind) -> Result<Self> {
        rho.ensure_qubit_a()?;
        let dim = rho.dim();
        let id_b = ComplexMatrix::identity(rho.dim_b());
        let sigmas: Vec<ComplexMatrix> = pauli().iter().map(|s| s.kron(&id_b)).collect();
        let kind = match metric {
            MetricKind::Bures => {
                let s = rho.sqrt();
                let x = |k: usize| (&(&s * &sigmas[k]) * &s).hermitian_part().as_slice().to_vec();
                Prepared::Bures([x(0), x(1), x(2)])
            }
            MetricKind::Hellinger => {
                let s = rho.sqrt();
                let ss: Vec<ComplexMatrix> = sigmas.iter().map(|sig| &s * sig).collect();
                let mut g = [[0.0; 3]; 3];
                for j in 0..3 {
                    for k in 0..3 {
                        g[j][k] = (&ss[j] * &ss[k]).trace().re;
                    }
                }
                Prepared::Hellinger(g)
            }
            MetricKind::Trace => {
                let m = rho.matrix();
                let prod = |j: usize, k: usize| {
                    let a = &(&sigmas[j] * m) * &sigmas[k];
                    let b = &(&sigmas[k] * m) * &sigmas[j];
                    (&a + &b).as_slice().to_vec()
                };
                let products = [
                    [prod(0, 0), prod(0, 1), prod(0, 2)],
                    [prod(1, 0), prod(1, 1), prod(1, 2)],
                    [prod(2, 0), prod(2, 1), prod(2, 2)],
                ];
                Prepared::Trace {
                    rho: m.as_slice().to_vec(),
                    products,
                }
            }
        };
        Ok(Self {
            dim,
            kind,
            scratch: vec![ZERO; dim * dim],
            values: vec![0.0; dim],
        })
    }

    pub fn metric(&self) -> MetricKind {
        match self.kind {
            Prepared::Bures(_) => MetricKind::Bures,
            Prepared::Hellinger(_) => MetricKind::Hellinger,
            Prepared::Trace { .. } => MetricKind::Trace,
        }
    }

    /// Response for the unit vector `n`; not clamped, so round-off may leave
    /// it a hair outside `[0, 1]`.
    pub fn eval(&mut self, n: [f64; 3]) -> f64 {
        let dim = self.dim;
        match &self.kind {
            Prepared::Bures(x) => {
                for (i, out) in self.scratch.iter_mut().enumerate() {
                    *out = x[0][i] * n[0] + x[1][i] * n[1] + x[2][i] * n[2];
                }
                hermitian_eigenvalues_into(&mut self.scratch, dim, &mut self.values).expect("Hermitian by construction");
                1.0 - self.values.iter().map(|v| v.abs()).sum::<f64>()
            }
            Prepared::Hellinger(g) => {
                let mut q = 0.0;
                for j in 0..3 {
                    for k in 0..3 {
                        q += n[j] * g[j][k] * n[k];
                    }
                }
                1.0 - q
            }
            Prepared::Trace { rho, products } => {
                self.scratch.copy_from_slice(rho);
                for j in 0..3 {
                    for k in j..3 {
                        // Diagonal products were doubled by the symmetrization.
                        let w = if j == k { 0.5 } else { 1.0 } * n[j] * n[k];
                        for (out, p) in self.scratch.iter_mut().zip(&products[j][k]) {
                            *out -= p * w;
                        }
                    }
                }
                hermitian_eigenvalues_into(&mut self.scratch, dim, &mut self.values).expect("Hermitian by construction");
                let norm: f64 = self.values.iter().map(|v| v.abs()).sum();
                0.25 * norm * norm
            }
        }
    }
}

/// `N^-1 d^2(rho, U rho U^dag)` for `U = n . sigma` on A.
pub fn response_objective(rho: &DensityMatrix, a: LocalUnitaryAngles, metric: MetricKind) -> Result<f64> {
    Ok(ResponseObjective::new(rho, metric)?.eval(a.axis()))
}

/// The same response evaluated by forming `U rho U^dag` and calling the distance functions.
pub fn response_objective_explicit(rho: &DensityMatrix, a: LocalUnitaryAngles, metric: MetricKind) -> Result<f64> {
    rho.ensure_qubit_a()?;
    let u = unitary_from_angles(a);
    let moved = crate::states::apply_local_unitary(rho, &u)?;
    let d = distance(metric, rho, &moved)?;
    Ok(metric.normalization() * d * d)
}

/// Bures response from the eigenvalues of the non-Hermitian product `rho U`.
pub fn bures_objective_via_product(rho: &DensityMatrix, a: LocalUnitaryAngles) -> Result<f64> {
    rho.ensure_qubit_a()?;
    let u = unitary_from_angles(a).kron(&ComplexMatrix::identity(rho.dim_b()));
    let ev = general_eigenvalues(&(rho.matrix() * &u))?;
    Ok(1.0 - ev.iter().map(|z| z.norm()).sum::<f64>())
}

pub fn discord_of_response(rho: &DensityMatrix, metric: MetricKind) -> Result<DiscordResult> {
    discord_of_response_with(rho, metric, &OptimizerConfig::default())
}

pub fn discord_of_response_with(rho: &DensityMatrix, metric: MetricKind, cfg: &OptimizerConfig) -> Result<DiscordResult> {
    let mut objective = ResponseObjective::new(rho, metric)?;
    let m = minimize_on_sphere(|n| objective.eval(n), cfg);
    if !m.value.is_finite() {
        return Err(Error::OptimizerFailure {
            restarts: cfg.refine_from,
        });
    }
    Ok(DiscordResult {
        metric,
        value: m.value.clamp(0.0, 1.0),
        argmin: LocalUnitaryAngles {
            theta: m.theta,
            phi: m.phi,
        },
        objective_evals: m.evals,
        converged: m.converged,
    })
}


#[cfg(test)]
mod tests {
    use super::test_support::*;
    use super::*;
    use crate::linalg::haar_unitary;
    use crate::states::{
        apply_channel_b, apply_local_unitaries, bell_state, classical_quantum, mq_family_b, random_channel_b, random_state,
        werner, BellState, OrthonormalBasis, WernerParameter,
    };
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_angles<R: Rng>(rng: &mut R) -> LocalUnitaryAngles {
        LocalUnitaryAngles::normalized(rng.random::<f64>() * PI, rng.random::<f64>() * 2.0 * PI)
    }

    fn random_cq<R: Rng>(rng: &mut R) -> DensityMatrix {
        let p: f64 = rng.random();
        let basis = OrthonormalBasis::qubit(rng.random::<f64>() * PI, rng.random::<f64>() * 2.0 * PI);
        let b = [random_state(2, 1, rng), random_state(2, 1, rng)];
        classical_quantum(&[p, 1.0 - p], &basis, &b).unwrap()
    }

    #[test]
    fn angles_and_unitaries() {
        let z = unitary_from_angles(LocalUnitaryAngles::new(0.0, 0.0).unwrap());
        assert!(z.max_abs_diff(&pauli()[2]) < 1e-15);
        let x = unitary_from_angles(LocalUnitaryAngles::new(PI / 2.0, 0.0).unwrap());
        assert!(x.max_abs_diff(&pauli()[0]) < 1e-15);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let u = unitary_from_angles(random_angles(&mut rng));
            assert!((&u * &u).max_abs_diff(&ComplexMatrix::identity(2)) < 1e-14);
            assert!(u.hermiticity_residual() < 1e-15);
            assert!(u.trace().norm() < 1e-15);
        }
        assert!(LocalUnitaryAngles::new(4.0, 0.0).is_err());
        assert!(LocalUnitaryAngles::new(1.0, 2.0 * PI).is_err());
    }

    #[test]
    fn fast_objectives_match_explicit_distances() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for (da, db) in [(2, 2), (2, 3)] {
            for _ in 0..30 {
                let rho = random_state(da, db, &mut rng);
                let a = random_angles(&mut rng);
                for metric in MetricKind::ALL {
                    let fast = response_objective(&rho, a, metric).unwrap();
                    let slow = response_objective_explicit(&rho, a, metric).unwrap();
                    assert!((fast - slow).abs() < 1e-9, "{metric}: {fast} vs {slow}");
                }
                let product = bures_objective_via_product(&rho, a).unwrap();
                let fast = response_objective(&rho, a, MetricKind::Bures).unwrap();
                assert!((fast - product).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn singlet_responds_fully_to_every_axis() {
        let singlet = bell_state(BellState::PsiMinus);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let v = response_objective(&singlet, random_angles(&mut rng), MetricKind::Bures).unwrap();
            assert!((v - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn cq_state_is_invariant_under_its_basis() {
        let basis = OrthonormalBasis::qubit(0.7, 1.9);
        let b = [
            DensityMatrix::single(ComplexMatrix::from_diagonal(&[0.8, 0.2])).unwrap(),
            DensityMatrix::single(ComplexMatrix::from_diagonal(&[0.1, 0.9])).unwrap(),
        ];
        let rho = classical_quantum(&[0.3, 0.7], &basis, &b).unwrap();
        let a = LocalUnitaryAngles::new(0.7, 1.9).unwrap();
        for metric in MetricKind::ALL {
            assert!(response_objective(&rho, a, metric).unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn reference_values() {
        let w = discord_of_response(&werner(WernerParameter::new(0.9).unwrap()), MetricKind::Bures).unwrap();
        assert!((w.value - 0.5869231).abs() < 1e-7, "{}", w.value);
        assert!(w.converged);
        let mixed = discord_of_response(&DensityMatrix::maximally_mixed(2, 2), MetricKind::Bures).unwrap();
        assert!(mixed.value < 1e-12);
        let b = discord_of_response(&mq_family_b(0.36).unwrap(), MetricKind::Bures).unwrap();
        assert!((b.value - 1.0 / 3.0).abs() < 1e-6);
    }

    #[test]
    fn hellinger_matches_quadratic_form_minimum() {
        // Oracle: the Hellinger response is 1 - n^T G n, minimized by the top eigenvector of G.
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..10 {
            let rho = random_state(2, 2, &mut rng);
            let r = discord_of_response(&rho, MetricKind::Hellinger).unwrap();
            let obj = ResponseObjective::new(&rho, MetricKind::Hellinger).unwrap();
            let Prepared::Hellinger(g) = obj.kind else { unreachable!() };
            let gm = ComplexMatrix::from_real_rows(&[&g[0], &g[1], &g[2]]).unwrap();
            let top = crate::linalg::hermitian_eigenvalues(&gm.hermitian_part()).unwrap()[2];
            assert!((r.value - (1.0 - top)).abs() < 1e-10);
        }
    }

    #[test]
    fn faithful_on_cq_and_generic_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            for metric in MetricKind::ALL {
                assert!(discord_of_response(&random_cq(&mut rng), metric).unwrap().value <= 1e-7);
            }
            assert!(discord_of_response(&random_state(2, 2, &mut rng), MetricKind::Bures).unwrap().value > 1e-6);
        }
    }

    #[test]
    fn invariant_under_local_unitaries_and_monotone_under_b_channels() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..5 {
            let rho = random_state(2, 2, &mut rng);
            let base = discord_of_response(&rho, MetricKind::Bures).unwrap().value;
            let (va, vb) = random_local_unitaries(&mut rng);
            let moved = apply_local_unitaries(&rho, &va, &vb).unwrap();
            assert!((discord_of_response(&moved, MetricKind::Bures).unwrap().value - base).abs() < 1e-7);
            let kraus = random_channel_b(2, 2, &mut rng);
            let out = apply_channel_b(&rho, &kraus).unwrap();
            assert!(discord_of_response(&out, MetricKind::Bures).unwrap().value <= base + 1e-7);
        }
    }

    #[test]
    fn werner_states_are_blind_to_symmetric_rotations() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for f in [0.1, 0.5, 0.9] {
            let w = werner(WernerParameter::new(f).unwrap());
            assert!(symmetric_response_minimum(&w, &mut rng) <= 1e-9);
            let u = haar_unitary(2, &mut rng);
            let moved = apply_local_unitaries(&w, &u, &u).unwrap();
            assert!((moved.matrix() - w.matrix()).frobenius_norm() <= 1e-10);
        }
        let generic = random_state(2, 2, &mut rng);
        assert!(symmetric_response_minimum(&generic, &mut rng) > 1e-4);
    }

    #[test]
    fn rejects_qutrit_a() {
        let rho = DensityMatrix::maximally_mixed(3, 2);
        assert!(matches!(
            discord_of_response(&rho, MetricKind::Bures),
            Err(Error::UnsupportedDimension { dim_a: 3 })
        ));
    }
}
