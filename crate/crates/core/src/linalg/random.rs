use rand::Rng;
use rand_distr::StandardNormal;

use super::matrix::{ComplexMatrix, C64, ONE, ZERO};

/// Standard complex Gaussian sample, `E|z|^2 = 1`.
pub fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Square matrix of i.i.d. standard complex Gaussians.
pub fn random_ginibre<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    let data = (0..n * n).map(|_| complex_normal(rng)).collect();
    ComplexMatrix::from_row_major(n, n, data).expect("finite gaussian samples")
}

/// `G + G^dag` for a Ginibre `G`.
pub fn random_hermitian<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    let g = random_ginibre(n, rng);
    &g + &g.adjoint()
}

/// Householder QR of a square matrix: returns `(Q, R)` with `Q` unitary and
/// `R` upper triangular. The diagonal of `R` is in general complex.
pub fn qr(m: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let n = m.rows();
    assert!(m.is_square(), "qr expects a square matrix");
    let mut r = m.clone();
    let mut q = ComplexMatrix::identity(n);
    let mut w = vec![ZERO; n];
    for k in 0..n.saturating_sub(1) {
        let tail: f64 = (k + 1..n).map(|i| r[(i, k)].norm_sqr()).sum();
        if tail == 0.0 {
            continue;
        }
        let alpha = r[(k, k)];
        let xnorm = (alpha.norm_sqr() + tail).sqrt();
        let phase = if alpha.norm() > 0.0 { alpha / alpha.norm() } else { ONE };
        for i in k..n {
            w[i] = r[(i, k)];
        }
        w[k] += phase * xnorm;
        let beta = 2.0 / (k..n).map(|i| w[i].norm_sqr()).sum::<f64>();
        for j in k..n {
            let s: C64 = (k..n).map(|i| w[i].conj() * r[(i, j)]).sum::<C64>() * beta;
            for i in k..n {
                r[(i, j)] -= w[i] * s;
            }
        }
        for i in k + 1..n {
            r[(i, k)] = ZERO;
        }
        for row in 0..n {
            let s: C64 = (k..n).map(|j| q[(row, j)] * w[j]).sum::<C64>() * beta;
            for j in k..n {
                q[(row, j)] -= s * w[j].conj();
            }
        }
    }
    (q, r)
}

/// Haar-distributed unitary: QR of a Ginibre matrix with the phases of the
/// diagonal of `R` moved into `Q`.
pub fn haar_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    assert!(n >= 1, "dimension must be positive");
    let g = random_ginibre(n, rng);
    let (mut q, r) = qr(&g);
    for j in 0..n {
        let d = r[(j, j)];
        let ph = if d.norm() > 0.0 { d / d.norm() } else { ONE };
        for i in 0..n {
            q[(i, j)] *= ph;
        }
    }
    q
}

/// Haar-random unit vector in `C^n`.
pub fn haar_vector<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<C64> {
    let mut v: Vec<C64> = (0..n).map(|_| complex_normal(rng)).collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for z in &mut v {
        *z /= norm;
    }
    v
}

/// Uniform sample from the probability simplex with `n` vertices
/// (spacings of sorted uniforms).
pub fn simplex_point<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<f64> {
    let mut cuts: Vec<f64> = (0..n.saturating_sub(1)).map(|_| rng.random::<f64>()).collect();
    cuts.sort_by(f64::total_cmp);
    let mut out = Vec::with_capacity(n);
    let mut prev = 0.0;
    for c in cuts {
        out.push(c - prev);
        prev = c;
    }
    out.push(1.0 - prev);
    out
}
