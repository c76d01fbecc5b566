use std::f64::consts::PI;

use super::LocalUnitaryAngles;
use crate::error::{Error, Result};
use crate::states::BellDiagonalSpectrum;

/// Index pairs `{a, b}, {c, d}` of the spectrum matched by `sigma_x`, `sigma_y`, `sigma_z`.
const PAIRINGS: [[usize; 4]; 3] = [[0, 2, 1, 3], [0, 3, 1, 2], [0, 1, 2, 3]];

/// Closed-form Bures discord of response of a Bell-diagonal state:
/// the minimum over the three pairings of `1 - 2 (sqrt(g_a g_b) + sqrt(g_c g_d))`.
pub fn bell_diagonal_discord(gamma: &BellDiagonalSpectrum) -> f64 {
    let g = gamma.gamma();
    PAIRINGS
        .iter()
        .map(|&[a, b, c, d]| 1.0 - 2.0 * ((g[a] * g[b]).sqrt() + (g[c] * g[d]).sqrt()))
        .fold(f64::INFINITY, f64::min)
        .clamp(0.0, 1.0)
}

/// Axis of the local unitary attaining `bell_diagonal_discord`.
pub fn bell_diagonal_minimizer(gamma: &BellDiagonalSpectrum) -> LocalUnitaryAngles {
    let g = gamma.gamma();
    let axes = [(PI / 2.0, 0.0), (PI / 2.0, PI / 2.0), (0.0, 0.0)];
    let (k, _) = PAIRINGS
        .iter()
        .map(|&[a, b, c, d]| (g[a] * g[b]).sqrt() + (g[c] * g[d]).sqrt())
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |best, (k, v)| if v > best.1 { (k, v) } else { best });
    LocalUnitaryAngles::normalized(axes[k].0, axes[k].1)
}

/// `Z(n) = n_x^2 (g1 g3 + g2 g4) + n_y^2 (g1 g4 + g2 g3) + n_z^2 (g1 g2 + g3 g4)`.
pub fn bell_z(gamma: &BellDiagonalSpectrum, a: LocalUnitaryAngles) -> f64 {
    let g = gamma.gamma();
    let n = a.axis();
    PAIRINGS
        .iter()
        .zip(n)
        .map(|(&[p, q, r, s], nk)| nk * nk * (g[p] * g[q] + g[r] * g[s]))
        .sum()
}

/// Sum of the moduli of the eigenvalues of `rho_gamma (n . sigma (x) I)`:
/// `sqrt 2 (sqrt(Z - sqrt(Z^2 - 4 Pi)) + sqrt(Z + sqrt(Z^2 - 4 Pi)))` with `Pi = g1 g2 g3 g4`.
pub fn bell_trace_norm_sum(gamma: &BellDiagonalSpectrum, a: LocalUnitaryAngles) -> f64 {
    let z = bell_z(gamma, a);
    let pi: f64 = gamma.gamma().iter().product();
    let disc = (z * z - 4.0 * pi).max(0.0).sqrt();
    2f64.sqrt() * ((z - disc).max(0.0).sqrt() + (z + disc).sqrt())
}

/// Closed-form Bures discord of response of a Werner state with singlet weight `f`.
pub fn werner_discord(f: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&f) {
        return Err(Error::OutOfRange {
            name: "f",
            value: f,
            lo: 0.0,
            hi: 1.0,
        });
    }
    let v = 1.0 - 2.0 / 3.0 * (1.0 - f) - 2.0 * (f - f * f).max(0.0).sqrt() / 3f64.sqrt();
    Ok(v.clamp(0.0, 1.0))
}

/// The two Werner states of a given purity `P = f^2 + (1 - f)^2 / 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WernerBranch {
    /// `f = (1 - sqrt(12 P - 3)) / 4`, defined for `P in [1/4, 1/3]`.
    Plus,
    /// `f = (1 + sqrt(12 P - 3)) / 4`, defined for `P in [1/4, 1]`.
    Minus,
}

impl WernerBranch {
    pub fn purity_range(self) -> (f64, f64) {
        match self {
            WernerBranch::Plus => (0.25, 1.0 / 3.0),
            WernerBranch::Minus => (0.25, 1.0),
        }
    }

    /// Singlet weight of the Werner state on this branch with purity `p`.
    pub fn singlet_weight(self, p: f64) -> Result<f64> {
        let s = self.root(p)?;
        Ok(match self {
            WernerBranch::Plus => (1.0 - s) / 4.0,
            WernerBranch::Minus => (1.0 + s) / 4.0,
        })
    }

    fn root(self, p: f64) -> Result<f64> {
        let (lo, hi) = self.purity_range();
        if !(lo..=hi).contains(&p) {
            return Err(Error::OutOfRange {
                name: "purity",
                value: p,
                lo,
                hi,
            });
        }
        Ok((12.0 * p - 3.0).max(0.0).sqrt())
    }
}

/// Werner discord of response as a function of purity along one branch.
pub fn werner_discord_vs_purity(p: f64, branch: WernerBranch) -> Result<f64> {
    let s = branch.root(p)?;
    let sign = match branch {
        WernerBranch::Minus => 1.0,
        WernerBranch::Plus => -1.0,
    };
    let v = 1.0 - (3.0 - sign * s).abs() / 6.0 - (-6.0 * p + sign * s + 3.0).abs().sqrt() / 6f64.sqrt();
    Ok(v.clamp(0.0, 1.0))
}

/// Axes at which `bell_trace_norm_sum` is stationary for every spectrum.
pub fn bell_stationary_angles() -> [LocalUnitaryAngles; 3] {
    [
        LocalUnitaryAngles::normalized(0.0, 0.0),
        LocalUnitaryAngles::normalized(PI / 2.0, 0.0),
        LocalUnitaryAngles::normalized(PI / 2.0, PI / 2.0),
    ]
}
