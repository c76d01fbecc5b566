//! Eigenvalues of general complex matrices: Householder reduction to upper
//! Hessenberg form followed by single-shift complex QR iteration.

use super::matrix::{ComplexMatrix, C64, ONE, ZERO};
use crate::error::{Error, Result};

/// Total QR sweeps allowed per unit of dimension.
pub const QR_ITERATIONS_PER_DIM: usize = 100;

/// All `n` eigenvalues of a square matrix, in no particular order.
pub fn general_eigenvalues(m: &ComplexMatrix) -> Result<Vec<C64>> {
    let n = m.ensure_square()?;
    let mut h = m.as_slice().to_vec();
    hessenberg(&mut h, n);
    hessenberg_qr(&mut h, n, QR_ITERATIONS_PER_DIM * n)
}

fn hessenberg(a: &mut [C64], n: usize) {
    let mut w = vec![ZERO; n];
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
        let beta = 2.0 / (start..n).map(|i| w[i].norm_sqr()).sum::<f64>();

        // A <- P A with P = I - beta w w^dag (rows start..n).
        for j in k..n {
            let s: C64 = (start..n).map(|i| w[i].conj() * a[i * n + j]).sum::<C64>() * beta;
            for i in start..n {
                a[i * n + j] -= w[i] * s;
            }
        }
        // A <- A P (columns start..n).
        for i in 0..n {
            let s: C64 = (start..n).map(|j| a[i * n + j] * w[j]).sum::<C64>() * beta;
            for j in start..n {
                a[i * n + j] -= s * w[j].conj();
            }
        }
        for i in start + 1..n {
            a[i * n + k] = ZERO;
        }
    }
}

/// Complex Givens rotation `G = [[c, s], [-conj(s), c]]` with `G [x; y] = [r; 0]`.
fn givens(x: C64, y: C64) -> (f64, C64) {
    let ax = x.norm();
    if y == ZERO {
        return (1.0, ZERO);
    }
    if ax == 0.0 {
        return (0.0, ONE);
    }
    let nrm = ax.hypot(y.norm());
    let alpha = x / ax;
    (ax / nrm, alpha * y.conj() / nrm)
}

fn hessenberg_qr(h: &mut [C64], n: usize, max_iter: usize) -> Result<Vec<C64>> {
    let idx = |i: usize, j: usize| i * n + j;
    let mut values = vec![ZERO; n];
    if n == 0 {
        return Ok(values);
    }
    let mut iu = n - 1;
    let mut iter_since_deflation = 0;
    let mut total = 0;
    loop {
        if iu == 0 {
            values[0] = h[idx(0, 0)];
            break;
        }
        // Locate the top of the active unreduced block.
        let mut il = iu;
        while il > 0 {
            let sub = h[idx(il, il - 1)].norm();
            let scale = h[idx(il - 1, il - 1)].norm() + h[idx(il, il)].norm();
            if sub <= f64::EPSILON * scale || sub < f64::MIN_POSITIVE {
                h[idx(il, il - 1)] = ZERO;
                break;
            }
            il -= 1;
        }
        if il == iu {
            values[iu] = h[idx(iu, iu)];
            iu -= 1;
            iter_since_deflation = 0;
            continue;
        }

        total += 1;
        iter_since_deflation += 1;
        if total > max_iter {
            return Err(Error::ConvergenceFailure { iterations: total });
        }

        let shift = if iter_since_deflation % 11 == 10 {
            // Exceptional shift to break cycles.
            let t = h[idx(iu, iu - 1)].norm()
                + if iu >= 2 { h[idx(iu - 1, iu - 2)].norm() } else { 0.0 };
            h[idx(iu, iu)] + C64::new(0.75 * t, 0.0)
        } else {
            wilkinson_shift(
                h[idx(iu - 1, iu - 1)],
                h[idx(iu - 1, iu)],
                h[idx(iu, iu - 1)],
                h[idx(iu, iu)],
            )
        };

        let mut x = h[idx(il, il)] - shift;
        let mut y = h[idx(il + 1, il)];
        for k in il..iu {
            let (c, s) = givens(x, y);
            // Rows k, k+1 from column max(il, k-1) to iu.
            let col0 = if k > il { k - 1 } else { il };
            for j in col0..=iu {
                let a = h[idx(k, j)];
                let b = h[idx(k + 1, j)];
                h[idx(k, j)] = a * c + s * b;
                h[idx(k + 1, j)] = -s.conj() * a + b * c;
            }
            // Columns k, k+1 from row il to min(k+2, iu).
            let row1 = (k + 2).min(iu);
            for i in il..=row1 {
                let a = h[idx(i, k)];
                let b = h[idx(i, k + 1)];
                h[idx(i, k)] = a * c + b * s.conj();
                h[idx(i, k + 1)] = -a * s + b * c;
            }
            if k > il {
                h[idx(k + 1, k - 1)] = ZERO;
            }
            if k + 1 < iu {
                x = h[idx(k + 1, k)];
                y = h[idx(k + 2, k)];
            }
        }
    }
    Ok(values)
}

/// Eigenvalue of `[[a, b], [c, d]]` closest to `d`.
fn wilkinson_shift(a: C64, b: C64, c: C64, d: C64) -> C64 {
    let half_tr = (a + d) * 0.5;
    let disc = ((a - d) * 0.5 * ((a - d) * 0.5) + b * c).sqrt();
    let l1 = half_tr + disc;
    let l2 = half_tr - disc;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}
