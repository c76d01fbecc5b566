use super::DensityMatrix;
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

const REGION_SLACK: f64 = 1e-12;
const C_OFFSET: f64 = 0.03;
const C_SLOPE: f64 = 0.35;

/// The three families of two-qubit states that maximize the discord of
/// response at fixed purity in the intermediate purity range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MqFamily {
    B,
    C,
    D,
}

impl MqFamily {
    pub fn name(self) -> &'static str {
        match self {
            MqFamily::B => "mq_b",
            MqFamily::C => "mq_c",
            MqFamily::D => "mq_d",
        }
    }

    /// Purity range on which the family is the maximizer.
    pub fn region(self) -> (f64, f64) {
        match self {
            MqFamily::B => (1.0 / 3.0, 0.39),
            MqFamily::C => (0.39, 0.53),
            MqFamily::D => (0.53, 0.94),
        }
    }

    /// Purity range on which the construction yields a valid state.
    pub fn domain(self) -> (f64, f64) {
        match self {
            MqFamily::B => (1.0 / 3.0, 5.0 / 9.0),
            MqFamily::C => (0.39, 0.53),
            MqFamily::D => (0.5, 1.0),
        }
    }

    fn check(self, purity: f64) -> Result<()> {
        let (lo, hi) = self.domain();
        if !purity.is_finite() || purity < lo - REGION_SLACK || purity > hi + REGION_SLACK {
            return Err(Error::OutOfRegion {
                family: self.name(),
                purity,
                lo,
                hi,
            });
        }
        Ok(())
    }
}

pub fn mq_family(family: MqFamily, purity: f64) -> Result<DensityMatrix> {
    match family {
        MqFamily::B => mq_family_b(purity),
        MqFamily::C => mq_family_c(purity),
        MqFamily::D => mq_family_d(purity),
    }
}

fn x_state(diag: [f64; 4], corner: f64) -> ComplexMatrix {
    let mut m = ComplexMatrix::from_diagonal(&diag);
    m[(0, 3)].re = corner;
    m[(3, 0)].re = corner;
    m
}

/// Family with the constant discord 1/3, valid for purities in `[1/3, 5/9]`.
pub fn mq_family_b(purity: f64) -> Result<DensityMatrix> {
    MqFamily::B.check(purity)?;
    let p = purity.max(1.0 / 3.0);
    let b = 2.0 + 6f64.sqrt() * (3.0 * p - 1.0).max(0.0).sqrt();
    let m = x_state([1.0, (4.0 - b).max(0.0), b, 1.0], 1.0).scale_real(1.0 / 6.0);
    Ok(DensityMatrix::from_trusted(m, 2, 2))
}

/// Largest purity at which the family-c construction is positive semidefinite
/// without clamping.
pub fn mq_family_c_psd_limit() -> f64 {
    // Solve 1 + 4K - 3c = 0 by bisection; the left side decreases in P.
    let f = |p: f64| {
        let (k, c) = family_c_params(p);
        1.0 + 4.0 * k - 3.0 * c
    };
    let (mut lo, mut hi) = (0.39, 0.53);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

fn family_c_params(p: f64) -> (f64, f64) {
    let k = C_OFFSET + C_SLOPE * p;
    let radicand = (7.0 * p - 24.0 * k * k + 8.0 * k - 3.0).max(0.0);
    let c = (1.0 + 8.0 * k + 2f64.sqrt() * radicand.sqrt()) / 7.0;
    (k, c)
}

/// Rank-3 family for the middle purity range.
///
/// Just below the top of the range the `|01>` weight turns slightly negative;
/// it is clamped to zero and the state renormalized.
pub fn mq_family_c(purity: f64) -> Result<DensityMatrix> {
    MqFamily::C.check(purity)?;
    let (k, c) = family_c_params(purity);
    let w01 = 0.5 * (1.0 + 4.0 * k - 3.0 * c);
    let w10 = 0.5 * (1.0 - 4.0 * k + c);
    let corner = (k * (c - k)).max(0.0).sqrt();
    let mut m = x_state([k, w01.max(0.0), w10, c - k], corner);
    if w01 < 0.0 {
        m = m.scale_real(1.0 / (1.0 - w01));
    }
    Ok(DensityMatrix::from_trusted(m, 2, 2))
}

/// Rank-2 family for the upper purity range, valid for purities in `[1/2, 1]`.
pub fn mq_family_d(purity: f64) -> Result<DensityMatrix> {
    MqFamily::D.check(purity)?;
    let p = purity.clamp(0.5, 1.0);
    let s = (2.0 * p - 1.0).sqrt();
    let d = 0.5 * (1.0 - s);
    let num = 2.0 * p + ((1.0 - p) * (3.0 - p + 2.0 * s)).max(0.0).sqrt() - 2.0;
    let den = -0.5 * (s + 1.0) * (s + 1.0);
    let eta = 0.5 * (num / den).clamp(-1.0, 1.0).acos();
    let (ce, se) = (eta.cos(), eta.sin());
    let w = 1.0 - d;
    let m = x_state([w * ce * ce, 0.0, d, w * se * se], w * ce * se);
    Ok(DensityMatrix::from_trusted(m, 2, 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::hermitian_eigenvalues;
    use crate::states::purity;

    fn rank(rho: &DensityMatrix) -> usize {
        hermitian_eigenvalues(rho.matrix()).unwrap().iter().filter(|v| **v > 1e-10).count()
    }

    fn grid(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
        (0..n).map(move |i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
    }

    #[test]
    fn family_b_examples() {
        let rho = mq_family_b(1.0 / 3.0).unwrap();
        assert!((purity(&rho) - 1.0 / 3.0).abs() < 1e-12);
        // b = 2 + sqrt(6 * 0.08) places b/6 on |10><10|.
        let rho = mq_family_b(0.36).unwrap();
        let b = 6.0 * rho.matrix()[(2, 2)].re;
        assert!((b - 2.692820323).abs() < 1e-8);
    }

    #[test]
    fn families_hit_requested_purity() {
        for p in grid(1.0 / 3.0, 0.39, 15) {
            let rho = mq_family_b(p).unwrap();
            assert!((purity(&rho) - p).abs() < 1e-6);
            assert!(DensityMatrix::from_dense(rho.into_matrix(), 2, 2).is_ok());
        }
        for p in grid(0.39, 0.53, 15) {
            let rho = mq_family_c(p).unwrap();
            assert!((purity(&rho) - p).abs() < 1e-2);
            assert!(DensityMatrix::from_dense(rho.into_matrix(), 2, 2).is_ok());
        }
        for p in grid(0.53, 0.94, 15) {
            let rho = mq_family_d(p).unwrap();
            assert!((purity(&rho) - p).abs() < 1e-6);
            assert!(DensityMatrix::from_dense(rho.into_matrix(), 2, 2).is_ok());
        }
    }

    #[test]
    fn family_ranks() {
        for p in grid(0.531, 0.939, 10) {
            assert_eq!(rank(&mq_family_d(p).unwrap()), 2, "P={p}");
        }
        let limit = mq_family_c_psd_limit();
        assert!((limit - 0.528866).abs() < 1e-5, "{limit}");
        for p in grid(0.39, limit - 1e-3, 10) {
            assert_eq!(rank(&mq_family_c(p).unwrap()), 3, "P={p}");
        }
        for p in grid(1.0 / 3.0, 0.39, 5) {
            assert!(rank(&mq_family_b(p).unwrap()) <= 4);
        }
    }

    #[test]
    fn family_d_at_unit_purity_is_pure() {
        let rho = mq_family_d(1.0).unwrap();
        let m = rho.matrix();
        assert!((purity(&rho) - 1.0).abs() < 1e-12);
        assert!(m[(2, 2)].re.abs() < 1e-15);
        assert!((m[(0, 3)].re - 0.5).abs() < 1e-12);
    }

    #[test]
    fn out_of_region() {
        assert!(matches!(mq_family_b(0.3), Err(Error::OutOfRegion { .. })));
        assert!(matches!(mq_family_c(0.6), Err(Error::OutOfRegion { .. })));
        assert!(matches!(mq_family_d(0.45), Err(Error::OutOfRegion { .. })));
        assert!(mq_family_d(f64::NAN).is_err());
    }
}
