use super::eigen::hermitian_eigenvalues_in_place;
use super::matrix::{ComplexMatrix, C64};
use crate::error::{Error, Result};

const JACOBI_MAX_SWEEPS: usize = 60;

/// Singular values of `m` by one-sided (Hestenes) Jacobi rotations, descending.
pub fn singular_values(m: &ComplexMatrix) -> Result<Vec<f64>> {
    let (rows, cols) = (m.rows(), m.cols());
    // Work on columns; transpose wide matrices so that rows >= cols.
    let a = if rows >= cols { m.clone() } else { m.adjoint() };
    let (r, c) = (a.rows(), a.cols());
    let mut colv: Vec<Vec<C64>> = (0..c).map(|j| a.column(j)).collect();

    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..c {
            for q in p + 1..c {
                let alpha: f64 = colv[p].iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = colv[q].iter().map(|z| z.norm_sqr()).sum();
                let gamma: C64 = colv[p].iter().zip(&colv[q]).map(|(x, y)| x.conj() * y).sum();
                let g = gamma.norm();
                if g <= f64::EPSILON * (alpha * beta).sqrt() || g == 0.0 {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let t = if zeta == 0.0 { 1.0 } else { t };
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = cs * t;
                for i in 0..r {
                    let x = colv[p][i];
                    let y = colv[q][i] * phase.conj();
                    colv[p][i] = x * cs - y * sn;
                    colv[q][i] = (x * sn + y * cs) * phase;
                }
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::ConvergenceFailure {
            iterations: JACOBI_MAX_SWEEPS,
        });
    }
    let mut s: Vec<f64> = colv
        .iter()
        .map(|v| v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
        .collect();
    s.sort_by(|a, b| b.total_cmp(a));
    Ok(s)
}

/// Trace norm `tr sqrt(M^dag M)`, the sum of the singular values.
///
/// Hermitian input takes the cheaper route through the eigenvalues.
pub fn trace_norm(m: &ComplexMatrix) -> Result<f64> {
    let n = m.ensure_square()?;
    if m.hermiticity_residual() <= 1e-14 * (1.0 + m.frobenius_norm()) {
        let mut a = m.hermitian_part();
        let ev = hermitian_eigenvalues_in_place(a.as_mut_slice(), n)?;
        return Ok(ev.iter().map(|x| x.abs()).sum());
    }
    Ok(singular_values(m)?.iter().sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::eigen::hermitian_eig;
    use crate::linalg::random::random_ginibre;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn diagonal_and_zero() {
        let d = ComplexMatrix::from_diagonal(&[1.0, -1.0]);
        assert!((trace_norm(&d).unwrap() - 2.0).abs() < 1e-15);
        assert_eq!(trace_norm(&ComplexMatrix::zeros(3, 3)).unwrap(), 0.0);
    }

    #[test]
    fn rejects_non_square() {
        assert!(matches!(
            trace_norm(&ComplexMatrix::zeros(2, 3)),
            Err(Error::NonSquare { .. })
        ));
    }

    #[test]
    fn matches_eigenvalues_of_gram_square_root() {
        // Oracle: sqrt of the eigenvalues of M^dag M, an independent route.
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..=8 {
            for _ in 0..20 {
                let m = random_ginibre(n, &mut rng);
                let gram = &m.adjoint() * &m;
                let eig = hermitian_eig(&gram).unwrap();
                let sqrt_gram = eig.map_values(|v| v.max(0.0).sqrt());
                let oracle: f64 = hermitian_eig(&sqrt_gram)
                    .unwrap()
                    .values
                    .iter()
                    .map(|v| v.abs())
                    .sum();
                let tn = trace_norm(&m).unwrap();
                assert!((tn - oracle).abs() < 1e-10 * (1.0 + oracle), "{tn} vs {oracle}");
            }
        }
    }

    #[test]
    fn rectangular_singular_values() {
        let m = ComplexMatrix::from_real_rows(&[&[3.0, 0.0, 0.0], &[0.0, 0.0, -2.0]]).unwrap();
        let s = singular_values(&m).unwrap();
        assert!((s[0] - 3.0).abs() < 1e-15 && (s[1] - 2.0).abs() < 1e-15);
    }
}
