//! Operational quantities: unitary-channel discrimination, reading error,
//! quantum Fisher information and interferometric power.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, hermitian_eigenvalues, ComplexMatrix, C64};
use crate::metrics::{trace_distance, MetricKind};
use crate::optimize::{minimize_on_sphere, OptimizerConfig};
use crate::response::{axis_unitary, discord_of_response_with, LocalUnitaryAngles};
use crate::states::{apply_local_unitary, DensityMatrix};

/// Terms of the Fisher information sum with `q_i + q_j` below this are dropped.
const QFI_WEIGHT_FLOOR: f64 = 1e-12;

/// Qubit unitary spectrum `{e^{i w}, e^{-i w}}`, up to a global phase.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumOmega(f64);

impl SpectrumOmega {
    pub fn new(omega: f64) -> Result<Self> {
        if !(omega > 0.0 && omega <= FRAC_PI_2) {
            return Err(Error::OutOfRange {
                name: "omega",
                value: omega,
                lo: 0.0,
                hi: FRAC_PI_2,
            });
        }
        Ok(Self(omega))
    }

    /// `w = pi/2`, the spectrum `{+1, -1}`.
    pub fn harmonic() -> Self {
        Self(FRAC_PI_2)
    }

    pub fn omega(self) -> f64 {
        self.0
    }

    /// `cos w I + i sin w (n . sigma)`.
    pub fn unitary(self, angles: LocalUnitaryAngles) -> ComplexMatrix {
        unitary_on_axis(self.0, angles.axis())
    }
}

fn unitary_on_axis(omega: f64, n: [f64; 3]) -> ComplexMatrix {
    let (s, c) = omega.sin_cos();
    let id = ComplexMatrix::identity(2).scale_real(c);
    &id + &axis_unitary(n).scale(C64::new(0.0, s))
}

/// `H_A = n . sigma`, spectrum `{+1, -1}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalHamiltonian {
    angles: LocalUnitaryAngles,
}

impl LocalHamiltonian {
    pub fn new(angles: LocalUnitaryAngles) -> Self {
        Self { angles }
    }

    pub fn angles(self) -> LocalUnitaryAngles {
        self.angles
    }

    pub fn matrix(self) -> ComplexMatrix {
        axis_unitary(self.angles.axis())
    }
}

/// Minimum error probability for telling `(u1 (x) I) rho (u1 (x) I)^dag`
/// from the same with `u2`, both equally likely.
pub fn helstrom_error(rho: &DensityMatrix, u1: &ComplexMatrix, u2: &ComplexMatrix) -> Result<f64> {
    let out1 = apply_local_unitary(rho, u1)?;
    let out2 = apply_local_unitary(rho, u2)?;
    let d = trace_distance(&out1, &out2)?;
    Ok((0.5 * (1.0 - 0.5 * d)).clamp(0.0, 0.5))
}

/// Minimum over unitaries with the spectrum `s` of the trace distance
/// between `rho` and its image.
pub fn min_distance_over_spectrum(rho: &DensityMatrix, s: SpectrumOmega) -> Result<f64> {
    min_distance_over_spectrum_with(rho, s, &OptimizerConfig::default())
}

pub fn min_distance_over_spectrum_with(rho: &DensityMatrix, s: SpectrumOmega, cfg: &OptimizerConfig) -> Result<f64> {
    rho.ensure_qubit_a()?;
    let id_b = ComplexMatrix::identity(rho.dim_b());
    let m = rho.matrix();
    let found = minimize_on_sphere(
        |n| {
            let u = unitary_on_axis(s.omega(), n).kron(&id_b);
            let diff = m - &m.conjugate_by(&u);
            match hermitian_eigenvalues(&diff.hermitian_part()) {
                Ok(ev) => ev.iter().map(|v| v.abs()).sum(),
                Err(_) => f64::NAN,
            }
        },
        cfg,
    );
    finite_or_fail(found.value)
}

fn finite_or_fail(v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::OptimizerFailure { restarts: 1 })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceDiscord {
    pub value: f64,
    pub argmin: LocalUnitaryAngles,
}

impl TraceDiscord {
    /// Helstrom error for the least distinguishable harmonic unitary.
    pub fn worst_case_error(&self) -> f64 {
        0.5 * (1.0 - self.value.max(0.0).sqrt())
    }
}

/// `1/4 min_U ||rho - U rho U^dag||_1^2` over harmonic local unitaries.
pub fn trace_discord_of_response(rho: &DensityMatrix) -> Result<TraceDiscord> {
    trace_discord_of_response_with(rho, &OptimizerConfig::default())
}

pub fn trace_discord_of_response_with(rho: &DensityMatrix, cfg: &OptimizerConfig) -> Result<TraceDiscord> {
    let r = discord_of_response_with(rho, MetricKind::Trace, cfg)?;
    Ok(TraceDiscord {
        value: r.value,
        argmin: r.argmin,
    })
}

/// `F(n) = n^T Q n`: the Fisher information for `H = n . sigma` is a
/// quadratic form in the axis.
struct FisherForm([[f64; 3]; 3]);

impl FisherForm {
    fn new(rho: &DensityMatrix) -> Result<Self> {
        rho.ensure_qubit_a()?;
        let eig = hermitian_eig(rho.matrix())?;
        let q: Vec<f64> = eig.values.iter().map(|v| v.max(0.0)).collect();
        let v = &eig.vectors;
        let id_b = ComplexMatrix::identity(rho.dim_b());
        let local = |k: usize| {
            let mut n = [0.0; 3];
            n[k] = 1.0;
            &(&v.adjoint() * &axis_unitary(n).kron(&id_b)) * v
        };
        let h = [local(0), local(1), local(2)];
        let mut form = [[0.0; 3]; 3];
        let d = q.len();
        for i in 0..d {
            for j in i + 1..d {
                let sum = q[i] + q[j];
                if sum < QFI_WEIGHT_FLOOR {
                    continue;
                }
                let w = 4.0 * (q[i] - q[j]).powi(2) / sum;
                for k in 0..3 {
                    for l in 0..3 {
                        form[k][l] += w * (h[k][(i, j)] * h[l][(i, j)].conj()).re;
                    }
                }
            }
        }
        Ok(Self(form))
    }

    fn eval(&self, n: [f64; 3]) -> f64 {
        let mut s = 0.0;
        for k in 0..3 {
            for l in 0..3 {
                s += n[k] * self.0[k][l] * n[l];
            }
        }
        s
    }
}

/// `4 sum_{i<j} (q_i - q_j)^2 / (q_i + q_j) |<i|H (x) I|j>|^2` over the
/// eigendecomposition `rho = sum q_i |i><i|`.
pub fn quantum_fisher_information(rho: &DensityMatrix, h: &LocalHamiltonian) -> Result<f64> {
    Ok(FisherForm::new(rho)?.eval(h.angles.axis()).max(0.0))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterferometricPower {
    pub value: f64,
    pub argmin: LocalUnitaryAngles,
}

/// A quarter of the smallest Fisher information over local Hamiltonians `n . sigma`.
pub fn interferometric_power(rho: &DensityMatrix) -> Result<InterferometricPower> {
    interferometric_power_with(rho, &OptimizerConfig::default())
}

pub fn interferometric_power_with(rho: &DensityMatrix, cfg: &OptimizerConfig) -> Result<InterferometricPower> {
    let form = FisherForm::new(rho)?;
    let found = minimize_on_sphere(|n| form.eval(n), cfg);
    let value = finite_or_fail(found.value)?;
    Ok(InterferometricPower {
        value: (0.25 * value).max(0.0),
        argmin: LocalUnitaryAngles::normalized(found.theta, found.phi),
    })
}
