//! Hermitian eigendecomposition for small dense matrices.
//!
//! The matrix is reduced to Hermitian tridiagonal form with Householder
//! reflectors, the complex off-diagonal is made real by a diagonal phase
//! similarity, and the resulting real symmetric tridiagonal problem is solved
//! with the implicit QL algorithm.

use super::matrix::{ComplexMatrix, C64, ONE, ZERO};
use crate::error::{Error, Result};
use crate::tolerance::HERMITIAN_INPUT_TOL;

const QL_MAX_SWEEPS: usize = 60;

/// Eigenvalues in ascending order with the matching orthonormal eigenvectors as columns.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl EigenDecomposition {
    /// `V diag(f(values)) V^dag`.
    pub fn map_values(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.values.len();
        let mapped: Vec<f64> = self.values.iter().map(|&v| f(v)).collect();
        let mut out = ComplexMatrix::zeros(n, n);
        for k in 0..n {
            let w = mapped[k];
            if w == 0.0 {
                continue;
            }
            for i in 0..n {
                let vik = self.vectors[(i, k)] * w;
                for j in 0..n {
                    out[(i, j)] += vik * self.vectors[(j, k)].conj();
                }
            }
        }
        out
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.map_values(|v| v)
    }
}

/// Full eigendecomposition of a Hermitian matrix.
pub fn hermitian_eig(h: &ComplexMatrix) -> Result<EigenDecomposition> {
    hermitian_eig_with(h, HERMITIAN_INPUT_TOL)
}

pub fn hermitian_eig_with(h: &ComplexMatrix, hermitian_tol: f64) -> Result<EigenDecomposition> {
    let n = validate(h, hermitian_tol)?;
    let mut a = h.hermitian_part();
    let mut z = ComplexMatrix::identity(n);
    let (mut d, mut e) = tridiagonalize(a.as_mut_slice(), n, Some(z.as_mut_slice()));
    tridiagonal_ql(&mut d, &mut e, Some(z.as_mut_slice()))?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].total_cmp(&d[j]));
    let values = order.iter().map(|&k| d[k]).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        for i in 0..n {
            vectors[(i, dst)] = z[(i, src)];
        }
    }
    Ok(EigenDecomposition { values, vectors })
}

/// Ascending eigenvalues of a Hermitian matrix, without eigenvectors.
pub fn hermitian_eigenvalues(h: &ComplexMatrix) -> Result<Vec<f64>> {
    let n = validate(h, HERMITIAN_INPUT_TOL)?;
    let mut a = h.hermitian_part();
    let mut values = hermitian_eigenvalues_in_place(a.as_mut_slice(), n)?;
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// Largest dimension served from stack buffers in the eigenvalue-only path.
const STACK_DIM: usize = 8;

/// Unsorted eigenvalues of the Hermitian matrix held row-major in `a`.
///
/// Only the lower triangle is read; `a` is overwritten. No validation is done,
/// this is the inner-loop entry point for objective evaluations.
pub(crate) fn hermitian_eigenvalues_in_place(a: &mut [C64], n: usize) -> Result<Vec<f64>> {
    let mut out = vec![0.0; n];
    hermitian_eigenvalues_into(a, n, &mut out)?;
    Ok(out)
}

/// As [`hermitian_eigenvalues_in_place`], writing the values to `out[..n]`
/// without allocating when `n <= 8`.
pub(crate) fn hermitian_eigenvalues_into(a: &mut [C64], n: usize, out: &mut [f64]) -> Result<()> {
    if n > STACK_DIM {
        let (d, mut e) = tridiagonalize(a, n, None);
        out[..n].copy_from_slice(&d);
        return tridiagonal_ql(&mut out[..n], &mut e, None);
    }
    let mut w = [ZERO; STACK_DIM];
    let mut p = [ZERO; STACK_DIM];
    let mut e = [0.0; STACK_DIM];
    tridiagonalize_with(a, n, None, &mut w[..n], &mut p[..n], &mut out[..n], &mut e[..n]);
    tridiagonal_ql(&mut out[..n], &mut e[..n], None)
}

fn validate(h: &ComplexMatrix, tol: f64) -> Result<usize> {
    let n = h.ensure_square()?;
    let residual = h.hermiticity_residual();
    if residual > tol {
        return Err(Error::NonHermitian { residual });
    }
    Ok(n)
}

/// Householder reduction of the Hermitian matrix `a` (row-major, lower triangle
/// used) to real symmetric tridiagonal form `(diag, offdiag)` where
/// `offdiag[i]` couples `i` and `i + 1`.
///
/// When `q` is given it must hold the identity on entry; on exit it holds
/// the unitary `Q` with `A = Q T Q^dag`, `T` the real tridiagonal matrix.
fn tridiagonalize(a: &mut [C64], n: usize, q: Option<&mut [C64]>) -> (Vec<f64>, Vec<f64>) {
    let mut w = vec![ZERO; n];
    let mut p = vec![ZERO; n];
    let mut diag = vec![0.0; n];
    let mut off = vec![0.0; n];
    tridiagonalize_with(a, n, q, &mut w, &mut p, &mut diag, &mut off);
    (diag, off)
}

fn tridiagonalize_with(
    a: &mut [C64],
    n: usize,
    mut q: Option<&mut [C64]>,
    w: &mut [C64],
    p: &mut [C64],
    diag: &mut [f64],
    off: &mut [f64],
) {
    if n == 0 {
        return;
    }
    for k in 0..n.saturating_sub(2) {
        let start = k + 1;
        let tail: f64 = (start + 1..n).map(|i| a[i * n + k].norm_sqr()).sum();
        if tail == 0.0 {
            continue;
        }
        let alpha = a[start * n + k];
        let xnorm = (alpha.norm_sqr() + tail).sqrt();
        let phase = if alpha.norm() > 0.0 { alpha / alpha.norm() } else { ONE };
        for i in start..n {
            w[i] = a[i * n + k];
        }
        w[start] += phase * xnorm;
        let wnorm2: f64 = (start..n).map(|i| w[i].norm_sqr()).sum();
        let beta = 2.0 / wnorm2;

        // Rank-two update of the trailing block: A <- A - w q^dag - q w^dag.
        for i in start..n {
            let mut s = ZERO;
            for j in start..n {
                s += herm_get(a, n, i, j) * w[j];
            }
            p[i] = s * beta;
        }
        let wp: C64 = (start..n).map(|i| w[i].conj() * p[i]).sum();
        let kk = 0.5 * beta * wp.re;
        for i in start..n {
            p[i] -= w[i] * kk;
        }
        for i in start..n {
            for j in start..=i {
                a[i * n + j] -= w[i] * p[j].conj() + p[i] * w[j].conj();
            }
        }
        a[start * n + k] = -phase * xnorm;
        for i in start + 1..n {
            a[i * n + k] = ZERO;
        }

        if let Some(q) = q.as_deref_mut() {
            // Q <- Q (I - beta w w^dag)
            for r in 0..n {
                let mut s = ZERO;
                for j in start..n {
                    s += q[r * n + j] * w[j];
                }
                let s = s * beta;
                for j in start..n {
                    q[r * n + j] -= s * w[j].conj();
                }
            }
        }
    }

    for i in 0..n {
        diag[i] = a[i * n + i].re;
    }
    off[n - 1] = 0.0;
    let mut delta = ONE;
    for i in 0..n.saturating_sub(1) {
        let s = a[(i + 1) * n + i];
        let m = s.norm();
        off[i] = m;
        if m > 0.0 {
            delta *= s / m;
        }
        if let Some(q) = q.as_deref_mut() {
            for r in 0..n {
                q[r * n + i + 1] *= delta;
            }
        }
    }
}

#[inline]
fn herm_get(a: &[C64], n: usize, i: usize, j: usize) -> C64 {
    if i >= j {
        a[i * n + j]
    } else {
        a[j * n + i].conj()
    }
}

/// Implicit QL with Wilkinson-type shifts on a real symmetric tridiagonal matrix.
/// Rotations are accumulated into the columns of `z` when given.
fn tridiagonal_ql(d: &mut [f64], e: &mut [f64], mut z: Option<&mut [C64]>) -> Result<()> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    e[n - 1] = 0.0;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > QL_MAX_SWEEPS {
                return Err(Error::ConvergenceFailure { iterations: iter });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = (g * g + 1.0).sqrt();
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut deflated = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = (f * f + g * g).sqrt();
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some(z) = z.as_deref_mut() {
                    for k in 0..n {
                        let f = z[k * n + i + 1];
                        let zi = z[k * n + i];
                        z[k * n + i + 1] = zi * s + f * c;
                        z[k * n + i] = zi * c - f * s;
                    }
                }
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}
