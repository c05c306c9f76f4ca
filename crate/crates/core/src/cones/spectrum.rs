use num_traits::Float;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernels::StepKernel;
use crate::scalar::Scalar;

/// Largest block count accepted by [`spectrum`].
pub const SPECTRUM_CAP: usize = 64;
pub const MAX_SWEEPS: usize = 100;
pub const RELATIVE_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumReport {
    /// Sorted by absolute value, largest first.
    pub eigenvalues: Vec<f64>,
    /// `max_i |S v_i − λ_i v_i|`.
    pub residual: f64,
    pub sweeps: usize,
}

/// Eigen-decomposition of a dense symmetric row-major matrix by cyclic Jacobi rotations.
///
/// Returns the eigenvalues, the eigenvectors as columns of a row-major matrix, and the
/// number of sweeps used.
pub fn jacobi_eigen<F: Float>(
    matrix: &[F],
    n: usize,
    tolerance: F,
    max_sweeps: usize,
) -> Result<(Vec<F>, Vec<F>, usize)> {
    assert_eq!(matrix.len(), n * n);
    let mut a = matrix.to_vec();
    let mut v = vec![F::zero(); n * n];
    for i in 0..n {
        v[i * n + i] = F::one();
    }
    let norm = a.iter().fold(F::zero(), |acc, &x| acc + x * x).sqrt();
    let threshold = tolerance * norm;
    let two = F::one() + F::one();
    for sweep in 0..=max_sweeps {
        let mut off = F::zero();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    off = off + a[i * n + j] * a[i * n + j];
                }
            }
        }
        if off.sqrt() <= threshold {
            let values = (0..n).map(|i| a[i * n + i]).collect();
            return Ok((values, v, sweep));
        }
        if sweep == max_sweeps {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == F::zero() {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (two * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + F::one()).sqrt());
                let c = F::one() / (t * t + F::one()).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    Err(Error::NoConvergence(max_sweeps))
}

/// Eigenvalues of the integral operator of `kernel`, i.e. of `D^{1/2} A D^{1/2}`.
pub fn spectrum<T: Scalar>(kernel: &StepKernel<T>) -> Result<SpectrumReport> {
    let n = kernel.blocks();
    if n > SPECTRUM_CAP {
        return Err(Error::CapExceeded {
            what: "spectrum blocks",
            cap: SPECTRUM_CAP as u64,
            got: n as u64,
        });
    }
    let root: Vec<f64> = kernel.measures().iter().map(|m| m.to_f64().sqrt()).collect();
    let s: Vec<f64> = (0..n * n)
        .map(|k| {
            let (i, j) = (k / n, k % n);
            root[i] * kernel.entry(i, j).to_f64() * root[j]
        })
        .collect();
    let (values, vectors, sweeps) = jacobi_eigen(&s, n, RELATIVE_TOLERANCE, MAX_SWEEPS)?;

    let mut residual = 0.0_f64;
    for (col, &lambda) in values.iter().enumerate() {
        let mut sq = 0.0;
        for i in 0..n {
            let sv: f64 = (0..n).map(|j| s[i * n + j] * vectors[j * n + col]).sum();
            let r = sv - lambda * vectors[i * n + col];
            sq += r * r;
        }
        residual = residual.max(sq.sqrt());
    }
    let mut eigenvalues = values;
    eigenvalues.sort_by(|a, b| b.abs().total_cmp(&a.abs()).then(b.total_cmp(a)));
    Ok(SpectrumReport {
        eigenvalues,
        residual,
        sweeps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Matrix;

    #[test]
    fn constant_kernel() {
        let r = spectrum(&StepKernel::constant(0.3_f64).unwrap()).unwrap();
        assert_eq!(r.eigenvalues, vec![0.3]);
    }

    #[test]
    fn two_block_uniform() {
        let (a, b) = (0.7, -0.2);
        let w = StepKernel::uniform(Matrix::from_rows(vec![vec![a, b], vec![b, a]]).unwrap())
            .unwrap();
        let r = spectrum(&w).unwrap();
        assert!((r.eigenvalues[0] - (a - b) / 2.0).abs() < 1e-12);
        assert!((r.eigenvalues[1] - (a + b) / 2.0).abs() < 1e-12);
        assert!(r.residual < 1e-12);
    }

    #[test]
    fn generic_over_f32() {
        let m = [2.0_f32, 1.0, 1.0, 2.0];
        let (mut values, _, _) = jacobi_eigen(&m, 2, 1e-6, 100).unwrap();
        values.sort_by(f32::total_cmp);
        assert!((values[0] - 1.0).abs() < 1e-5 && (values[1] - 3.0).abs() < 1e-5);
    }
}
