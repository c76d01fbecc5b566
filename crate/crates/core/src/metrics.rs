//! Contractive distances between density matrices.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, round_off_floor, trace_norm, ComplexMatrix};
use crate::states::DensityMatrix;

/// Radicands this far below zero are treated as round-off and clamped.
const RADICAND_CLAMP: f64 = 1e-12;
const SANDWICH_SLACK: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MetricKind {
    Trace,
    Hellinger,
    Bures,
}

impl MetricKind {
    pub const ALL: [MetricKind; 3] = [MetricKind::Trace, MetricKind::Hellinger, MetricKind::Bures];

    /// Factor that maps the squared distance to a response in `[0, 1]`.
    pub fn normalization(self) -> f64 {
        match self {
            MetricKind::Trace => 0.25,
            MetricKind::Hellinger | MetricKind::Bures => 0.5,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MetricKind::Trace => "trace",
            MetricKind::Hellinger => "hellinger",
            MetricKind::Bures => "bures",
        }
    }
}

impl fmt::Display for MetricKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MetricKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "trace" => Ok(MetricKind::Trace),
            "hellinger" => Ok(MetricKind::Hellinger),
            "bures" => Ok(MetricKind::Bures),
            other => Err(Error::InvalidArgument(format!("unknown metric \"{other}\""))),
        }
    }
}

pub(crate) fn clamped_sqrt(x: f64) -> f64 {
    debug_assert!(x >= -RADICAND_CLAMP || x.is_nan(), "radicand {x}");
    x.max(0.0).sqrt()
}

/// `sqrt(F) = tr sqrt(sqrt(r1) r2 sqrt(r1))`.
pub fn root_fidelity(r1: &DensityMatrix, r2: &DensityMatrix) -> Result<f64> {
    r1.ensure_same_shape(r2)?;
    Ok(root_fidelity_with_sqrt(&r1.sqrt(), r2.matrix()))
}

/// Root fidelity given a precomputed `sqrt(r1)`.
pub(crate) fn root_fidelity_with_sqrt(sqrt_r1: &ComplexMatrix, r2: &ComplexMatrix) -> f64 {
    let inner = r2.conjugate_by(sqrt_r1);
    let ev = hermitian_eigenvalues(&inner.hermitian_part()).expect("sandwiched state is Hermitian");
    let floor = round_off_floor(&ev);
    ev.iter().filter(|v| **v > floor).map(|v| v.sqrt()).sum::<f64>().min(1.0)
}

/// Uhlmann fidelity `(tr sqrt(sqrt(r1) r2 sqrt(r1)))^2`.
pub fn fidelity(r1: &DensityMatrix, r2: &DensityMatrix) -> Result<f64> {
    Ok(root_fidelity(r1, r2)?.powi(2))
}

/// Trace norm of `r1 - r2`, in `[0, 2]`.
pub fn trace_distance(r1: &DensityMatrix, r2: &DensityMatrix) -> Result<f64> {
    r1.ensure_same_shape(r2)?;
    trace_norm(&(r1.matrix() - r2.matrix()))
}

/// `sqrt(tr (sqrt(r1) - sqrt(r2))^2)`, in `[0, sqrt 2]`.
pub fn hellinger_distance(r1: &DensityMatrix, r2: &DensityMatrix) -> Result<f64> {
    r1.ensure_same_shape(r2)?;
    Ok((&r1.sqrt() - &r2.sqrt()).frobenius_norm())
}

/// `sqrt(2 (1 - sqrt F))`, in `[0, sqrt 2]`.
pub fn bures_distance(r1: &DensityMatrix, r2: &DensityMatrix) -> Result<f64> {
    Ok(clamped_sqrt(2.0 * (1.0 - root_fidelity(r1, r2)?)))
}

pub fn distance(kind: MetricKind, r1: &DensityMatrix, r2: &DensityMatrix) -> Result<f64> {
    match kind {
        MetricKind::Trace => trace_distance(r1, r2),
        MetricKind::Hellinger => hellinger_distance(r1, r2),
        MetricKind::Bures => bures_distance(r1, r2),
    }
}

/// The chain `d_Bu^2 <= d_Tr <= 2 d_Bu` evaluated on one pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sandwich {
    pub lower: f64,
    pub mid: f64,
    pub upper: f64,
    pub holds: bool,
}

pub fn sandwich_check(r1: &DensityMatrix, r2: &DensityMatrix) -> Result<Sandwich> {
    let bures = bures_distance(r1, r2)?;
    let mid = trace_distance(r1, r2)?;
    let lower = bures * bures;
    let upper = 2.0 * bures;
    Ok(Sandwich {
        lower,
        mid,
        upper,
        holds: lower <= mid + SANDWICH_SLACK && mid <= upper + SANDWICH_SLACK,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{haar_unitary, haar_vector, C64};
    use crate::states::{apply_channel_b, bell_state, random_channel_b, random_state, BellState};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn diag(v: &[f64]) -> DensityMatrix {
        DensityMatrix::from_dense(ComplexMatrix::from_diagonal(v), 2, 2).unwrap()
    }

    #[test]
    fn normalization_matches_tag() {
        assert_eq!(MetricKind::Trace.normalization(), 0.25);
        assert_eq!(MetricKind::Hellinger.normalization(), 0.5);
        assert_eq!(MetricKind::Bures.normalization(), 0.5);
        assert_eq!("Bures".parse::<MetricKind>().unwrap(), MetricKind::Bures);
        assert!("hs".parse::<MetricKind>().is_err());
    }

    #[test]
    fn identical_and_orthogonal() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let rho = random_state(2, 2, &mut rng);
        assert!((fidelity(&rho, &rho).unwrap() - 1.0).abs() < 1e-10);
        for k in MetricKind::ALL {
            assert!(distance(k, &rho, &rho).unwrap() < 1e-6);
        }
        let a = diag(&[1.0, 0.0, 0.0, 0.0]);
        let b = diag(&[0.0, 1.0, 0.0, 0.0]);
        assert!(fidelity(&a, &b).unwrap().abs() < 1e-15);
        assert!((trace_distance(&a, &b).unwrap() - 2.0).abs() < 1e-14);
        assert!((hellinger_distance(&a, &b).unwrap() - 2f64.sqrt()).abs() < 1e-14);
        assert!((bures_distance(&a, &b).unwrap() - 2f64.sqrt()).abs() < 1e-14);
        let s = sandwich_check(&a, &b).unwrap();
        assert!((s.lower - 2.0).abs() < 1e-13 && (s.mid - 2.0).abs() < 1e-13);
        assert!((s.upper - 2.0 * 2f64.sqrt()).abs() < 1e-13 && s.holds);
        let singlet = bell_state(BellState::PsiMinus);
        let psi_plus = bell_state(BellState::PsiPlus);
        assert!((bures_distance(&singlet, &psi_plus).unwrap() - 2f64.sqrt()).abs() < 1e-7);
    }

    #[test]
    fn pure_fidelity_is_overlap() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..50 {
            let u = haar_vector(4, &mut rng);
            let v = haar_vector(4, &mut rng);
            let overlap: C64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            let f = fidelity(&DensityMatrix::pure(&u, 2, 2).unwrap(), &DensityMatrix::pure(&v, 2, 2).unwrap()).unwrap();
            assert!((f - overlap.norm_sqr()).abs() < 1e-10);
        }
    }

    #[test]
    fn trace_distance_spectral_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let a = random_state(2, 2, &mut rng);
            let b = random_state(2, 2, &mut rng);
            let ev = hermitian_eigenvalues(&(a.matrix() - b.matrix())).unwrap();
            let positive: f64 = ev.iter().filter(|v| **v > 0.0).sum();
            assert!((trace_distance(&a, &b).unwrap() - 2.0 * positive).abs() < 1e-10);
        }
    }

    #[test]
    fn commuting_hellinger_is_classical() {
        let p = [0.1, 0.2, 0.3, 0.4];
        let q = [0.25, 0.25, 0.4, 0.1];
        let classical: f64 = p.iter().zip(&q).map(|(a, b): (&f64, &f64)| (a.sqrt() - b.sqrt()).powi(2)).sum::<f64>().sqrt();
        assert!((hellinger_distance(&diag(&p), &diag(&q)).unwrap() - classical).abs() < 1e-12);
    }

    #[test]
    fn dimension_mismatch() {
        let a = DensityMatrix::maximally_mixed(2, 2);
        let b = DensityMatrix::maximally_mixed(2, 3);
        for k in MetricKind::ALL {
            assert!(matches!(distance(k, &a, &b), Err(Error::DimensionMismatch { .. })));
        }
    }

    #[test]
    fn unitary_invariance_symmetry_and_triangle() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..30 {
            let a = random_state(2, 2, &mut rng);
            let b = random_state(2, 2, &mut rng);
            let c = random_state(2, 2, &mut rng);
            let u = haar_unitary(4, &mut rng);
            let ua = DensityMatrix::from_dense(a.matrix().conjugate_by(&u), 2, 2).unwrap();
            let ub = DensityMatrix::from_dense(b.matrix().conjugate_by(&u), 2, 2).unwrap();
            let f_ab = fidelity(&a, &b).unwrap();
            assert!((0.0..=1.0).contains(&f_ab));
            assert!((f_ab - fidelity(&b, &a).unwrap()).abs() < 1e-9);
            for k in MetricKind::ALL {
                let d = distance(k, &a, &b).unwrap();
                assert!((d - distance(k, &ua, &ub).unwrap()).abs() < 1e-10);
                let via_c = distance(k, &a, &c).unwrap() + distance(k, &c, &b).unwrap();
                assert!(d <= via_c + 1e-9);
            }
        }
    }

    #[test]
    fn fidelity_is_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let a1 = random_state(2, 1, &mut rng);
            let b1 = random_state(2, 1, &mut rng);
            let a2 = random_state(2, 1, &mut rng);
            let b2 = random_state(2, 1, &mut rng);
            let a = DensityMatrix::from_dense(a1.matrix().kron(a2.matrix()), 2, 2).unwrap();
            let b = DensityMatrix::from_dense(b1.matrix().kron(b2.matrix()), 2, 2).unwrap();
            let product = fidelity(&a1, &b1).unwrap() * fidelity(&a2, &b2).unwrap();
            assert!((fidelity(&a, &b).unwrap() - product).abs() < 1e-9);
        }
    }

    #[test]
    fn contractive_under_channels_on_b() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..30 {
            let a = random_state(2, 2, &mut rng);
            let b = random_state(2, 2, &mut rng);
            let kraus = random_channel_b(2, 2, &mut rng);
            let fa = apply_channel_b(&a, &kraus).unwrap();
            let fb = apply_channel_b(&b, &kraus).unwrap();
            for k in MetricKind::ALL {
                assert!(distance(k, &fa, &fb).unwrap() <= distance(k, &a, &b).unwrap() + 1e-10);
            }
        }
    }
}
