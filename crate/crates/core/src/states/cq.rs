use super::DensityMatrix;
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, C64};

const ORTHONORMAL_TOL: f64 = 1e-10;
const PROB_TOL: f64 = 1e-12;

/// An orthonormal basis of the A system.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthonormalBasis {
    vectors: Vec<Vec<C64>>,
}

impl OrthonormalBasis {
    pub fn new(vectors: Vec<Vec<C64>>) -> Result<Self> {
        let d = vectors.len();
        if d == 0 {
            return Err(Error::InvalidArgument("basis is empty".into()));
        }
        for v in &vectors {
            if v.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: v.len(),
                });
            }
        }
        for (i, u) in vectors.iter().enumerate() {
            for (j, v) in vectors.iter().enumerate() {
                let ip: C64 = u.iter().zip(v).map(|(x, y)| x.conj() * y).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                if (ip - C64::new(target, 0.0)).norm() > ORTHONORMAL_TOL {
                    return Err(Error::InvalidArgument(format!(
                        "basis vectors {i} and {j} are not orthonormal"
                    )));
                }
            }
        }
        Ok(Self { vectors })
    }

    pub fn computational(d: usize) -> Self {
        let vectors = (0..d)
            .map(|i| {
                let mut v = vec![C64::new(0.0, 0.0); d];
                v[i] = C64::new(1.0, 0.0);
                v
            })
            .collect();
        Self { vectors }
    }

    /// Eigenbasis of `n . sigma` with `n = (sin t cos p, sin t sin p, cos t)`.
    pub fn qubit(theta: f64, phi: f64) -> Self {
        let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
        let e = C64::from_polar(1.0, phi);
        let up = vec![C64::new(c, 0.0), e * s];
        let down = vec![-e.conj() * s, C64::new(c, 0.0)];
        Self {
            vectors: vec![up, down],
        }
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Vec<C64>] {
        &self.vectors
    }
}

/// `sum_i p_i |i><i| (x) rho_i`.
pub fn classical_quantum(probs: &[f64], basis_a: &OrthonormalBasis, rho_b: &[DensityMatrix]) -> Result<DensityMatrix> {
    let da = basis_a.dim();
    if probs.len() != da {
        return Err(Error::DimensionMismatch {
            expected: da,
            found: probs.len(),
        });
    }
    if rho_b.len() != da {
        return Err(Error::DimensionMismatch {
            expected: da,
            found: rho_b.len(),
        });
    }
    if let Some(p) = probs.iter().find(|p| !p.is_finite() || **p < 0.0) {
        return Err(Error::InvalidProbabilities(format!("entry {p} is negative")));
    }
    let sum: f64 = probs.iter().sum();
    if (sum - 1.0).abs() > PROB_TOL {
        return Err(Error::InvalidProbabilities(format!("entries sum to {sum}, expected 1")));
    }
    let db = rho_b[0].dim();
    let mut out = ComplexMatrix::zeros(da * db, da * db);
    for ((p, e), r) in probs.iter().zip(&basis_a.vectors).zip(rho_b) {
        if r.dim() != db {
            return Err(Error::DimensionMismatch {
                expected: db,
                found: r.dim(),
            });
        }
        let proj = ComplexMatrix::outer(e, e);
        out = &out + &proj.kron(r.matrix()).scale_real(*p);
    }
    Ok(DensityMatrix::from_trusted(out, da, db))
}
