use std::f64::consts::FRAC_1_SQRT_2;

use super::DensityMatrix;
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, C64};

/// The four Bell states. `Theta` states live on `{|00>, |11>}`, `Psi` states on `{|01>, |10>}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BellState {
    ThetaPlus,
    ThetaMinus,
    PsiPlus,
    PsiMinus,
}

impl BellState {
    /// Order in which the spectrum `gamma` is indexed.
    pub const ORDER: [BellState; 4] = [
        BellState::ThetaPlus,
        BellState::ThetaMinus,
        BellState::PsiPlus,
        BellState::PsiMinus,
    ];
}

pub fn bell_vector(which: BellState) -> [C64; 4] {
    let h = C64::new(FRAC_1_SQRT_2, 0.0);
    let z = C64::new(0.0, 0.0);
    match which {
        BellState::ThetaPlus => [h, z, z, h],
        BellState::ThetaMinus => [h, z, z, -h],
        BellState::PsiPlus => [z, h, h, z],
        BellState::PsiMinus => [z, h, -h, z],
    }
}

pub fn bell_state(which: BellState) -> DensityMatrix {
    let v = bell_vector(which);
    DensityMatrix::from_trusted(ComplexMatrix::outer(&v, &v), 2, 2)
}

/// Eigenvalues of a Bell-diagonal state, indexed as
/// `(Theta+, Theta-, Psi+, Psi-)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellDiagonalSpectrum {
    gamma: [f64; 4],
}

impl BellDiagonalSpectrum {
    const TOL: f64 = 1e-12;

    pub fn new(gamma: [f64; 4]) -> Result<Self> {
        if let Some(g) = gamma.iter().find(|g| !g.is_finite() || **g < -Self::TOL || **g > 1.0 + Self::TOL) {
            return Err(Error::InvalidSpectrum(format!("entry {g} is not in [0, 1]")));
        }
        let sum: f64 = gamma.iter().sum();
        if (sum - 1.0).abs() > Self::TOL {
            return Err(Error::InvalidSpectrum(format!("entries sum to {sum}, expected 1")));
        }
        Ok(Self {
            gamma: gamma.map(|g| g.clamp(0.0, 1.0)),
        })
    }

    pub fn gamma(&self) -> [f64; 4] {
        self.gamma
    }

    /// The spectrum of `rho` if it is Bell-diagonal, i.e. if it equals
    /// `bell_diagonal` of its Bell-basis weights to within `1e-10`.
    pub fn of_state(rho: &DensityMatrix) -> Option<Self> {
        if rho.dim_a() != 2 || rho.dim_b() != 2 {
            return None;
        }
        let gamma = BellState::ORDER.map(|b| {
            let v = bell_vector(b);
            let w = rho.matrix().mul_vec(&v);
            v.iter().zip(&w).map(|(x, y)| x.conj() * y).sum::<C64>().re
        });
        let spectrum = Self::new(gamma).ok()?;
        (bell_diagonal(&spectrum).matrix().max_abs_diff(rho.matrix()) <= 1e-10).then_some(spectrum)
    }
}

/// Dense form of `sum_i gamma_i |B_i><B_i|`.
pub fn bell_diagonal(spectrum: &BellDiagonalSpectrum) -> DensityMatrix {
    let [g1, g2, g3, g4] = spectrum.gamma;
    let mut m = ComplexMatrix::zeros(4, 4);
    let c = |x: f64| C64::new(0.5 * x, 0.0);
    m[(0, 0)] = c(g1 + g2);
    m[(3, 3)] = c(g1 + g2);
    m[(0, 3)] = c(g1 - g2);
    m[(3, 0)] = c(g1 - g2);
    m[(1, 1)] = c(g3 + g4);
    m[(2, 2)] = c(g3 + g4);
    m[(1, 2)] = c(g3 - g4);
    m[(2, 1)] = c(g3 - g4);
    DensityMatrix::from_trusted(m, 2, 2)
}

/// Singlet weight of a Werner state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WernerParameter(f64);

impl WernerParameter {
    pub fn new(f: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&f) {
            return Err(Error::OutOfRange {
                name: "f",
                value: f,
                lo: 0.0,
                hi: 1.0,
            });
        }
        Ok(Self(f))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// `f` on the singlet, `(1 - f) / 3` on each of the other Bell states.
    pub fn spectrum(self) -> BellDiagonalSpectrum {
        let r = (1.0 - self.0) / 3.0;
        BellDiagonalSpectrum {
            gamma: [r, r, r, self.0],
        }
    }
}

pub fn werner(f: WernerParameter) -> DensityMatrix {
    bell_diagonal(&f.spectrum())
}
