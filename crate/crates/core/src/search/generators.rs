//! Seeded generators for random step kernels with prescribed cone properties.

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::kernels::StepKernel;
use crate::matrix::Matrix;
use crate::scalar::{ratio, Rational};
use crate::Kernel;

/// Denominator of the random rational entries.
const GRID: i64 = 10;

pub(crate) fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn grid_value(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> Rational {
    ratio(rng.gen_range(lo * GRID..=hi * GRID), GRID)
}

pub fn uniform_measures(n: usize) -> Vec<Rational> {
    vec![ratio(1, n as i64); n]
}

/// Positive measures proportional to random integers in `1..=4`.
pub fn random_measures(n: usize, seed: u64) -> Vec<Rational> {
    let mut rng = rng_for(seed);
    let weights: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=4)).collect();
    let total: i64 = weights.iter().sum();
    weights.into_iter().map(|w| ratio(w, total)).collect()
}

fn random_factor(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Vec<Vec<Rational>> {
    (0..rows)
        .map(|_| (0..cols).map(|_| grid_value(rng, -1, 1)).collect())
        .collect()
}

fn gram(rows: &[Vec<Rational>]) -> Matrix<Rational> {
    Matrix::from_fn(rows.len(), |i, j| {
        rows[i].iter().zip(&rows[j]).map(|(a, b)| a * b).sum()
    })
}

/// `P·B` for the centering `P = I − 1μᵀ`, which makes every column `μ`-orthogonal to 1.
pub fn center_rows(rows: &[Vec<Rational>], measures: &[Rational]) -> Vec<Vec<Rational>> {
    let cols = rows.first().map_or(0, Vec::len);
    let means: Vec<Rational> = (0..cols)
        .map(|c| rows.iter().zip(measures).map(|(r, m)| &r[c] * m).sum())
        .collect();
    rows.iter()
        .map(|r| r.iter().zip(&means).map(|(x, m)| x - m).collect())
        .collect()
}

fn check_measures(n: usize, measures: &[Rational]) -> Result<()> {
    if measures.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: measures.len(),
        });
    }
    Ok(())
}

/// A PSD kernel with `A·μ = 0`, built as `P·B·Bᵀ·Pᵀ` for a random `B` of random rank.
pub fn gen_psd_zero_regular(n: usize, measures: &[Rational], seed: u64) -> Result<Kernel> {
    if n < 2 {
        return Err(Error::InvalidArgument("need at least two blocks".into()));
    }
    check_measures(n, measures)?;
    let mut rng = rng_for(seed);
    let rank = rng.gen_range(1..=n);
    let factor = center_rows(&random_factor(&mut rng, n, rank), measures);
    StepKernel::new(measures.to_vec(), gram(&factor))
}

/// Largest multiple of `1/den` not exceeding `x` (for `x ≥ 0`).
fn floor_to(x: &Rational, den: i64) -> Rational {
    (x * ratio(den, 1)).floor() / ratio(den, 1)
}

fn max_abs(m: &Matrix<Rational>) -> Rational {
    m.as_slice()
        .iter()
        .map(Signed::abs)
        .max()
        .unwrap_or_else(Rational::zero)
}

/// A `p`-locally dense graphon `p + αN + βE` with `N` PSD and `E ≥ 0` entrywise.
pub fn gen_locally_dense(p: &Rational, n: usize, seed: u64) -> Result<Kernel> {
    if !(p.is_positive() && p < &Rational::one()) {
        return Err(Error::InvalidArgument(format!("p must lie in (0, 1), got {p}")));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("need at least one block".into()));
    }
    let mut rng = rng_for(seed);
    let measures = random_measures(n, rng.gen());
    let rank = rng.gen_range(1..=n);
    let psd = gram(&random_factor(&mut rng, n, rank));
    let mut nonneg = Matrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            let v = grid_value(&mut rng, 0, 1);
            nonneg[(i, j)] = v.clone();
            nonneg[(j, i)] = v;
        }
    }
    // split the available room min(p, 1 − p) between the two parts
    let room = p.clone().min(Rational::one() - p);
    let share_n = ratio(rng.gen_range(0..=GRID), GRID);
    let share_e = ratio(rng.gen_range(0..=GRID), GRID) * (Rational::one() - &share_n);
    let scale = |m: &Matrix<Rational>, share: &Rational| {
        let top = max_abs(m);
        if top.is_zero() {
            Rational::zero()
        } else {
            floor_to(&(&room * share / top), 1000)
        }
    };
    let alpha = scale(&psd, &share_n);
    let beta = scale(&nonneg, &share_e);
    let matrix = Matrix::from_fn(n, |i, j| p + &alpha * &psd[(i, j)] + &beta * &nonneg[(i, j)]);
    let kernel = StepKernel::new(measures, matrix)?;
    debug_assert!(kernel.is_graphon());
    Ok(kernel)
}

/// A `p`-regular graphon `p + α·P·S·Pᵀ` where `S = B·Bᵀ + γR` mixes a PSD part with a
/// random symmetric `R`; depending on `γ` it may or may not be `p`-locally dense.
pub fn gen_regular_graphon(p: &Rational, n: usize, seed: u64) -> Result<Kernel> {
    if !(p.is_positive() && p < &Rational::one()) {
        return Err(Error::InvalidArgument(format!("p must lie in (0, 1), got {p}")));
    }
    if n < 2 {
        return Err(Error::InvalidArgument("need at least two blocks".into()));
    }
    let mut rng = rng_for(seed);
    let measures = random_measures(n, rng.gen());
    let rank = rng.gen_range(1..=n);
    let factor = random_factor(&mut rng, n, rank);
    let gamma = [ratio(0, 1), ratio(1, 8), ratio(1, 2), ratio(2, 1)][rng.gen_range(0..4)].clone();
    let mut s = gram(&factor);
    for i in 0..n {
        for j in i..n {
            let r = &gamma * grid_value(&mut rng, -1, 1);
            s[(i, j)] += &r;
            if i != j {
                s[(j, i)] += &r;
            }
        }
    }
    // P S Pᵀ, with P = I − 1μᵀ
    let centered_rows = center_rows(&s.rows().map(<[Rational]>::to_vec).collect::<Vec<_>>(), &measures);
    let transposed = Matrix::from_rows(centered_rows)?.transpose();
    let centered = Matrix::from_rows(center_rows(
        &transposed.rows().map(<[Rational]>::to_vec).collect::<Vec<_>>(),
        &measures,
    ))?;
    let room = p.clone().min(Rational::one() - p);
    let top = max_abs(&centered);
    let alpha = if top.is_zero() {
        Rational::zero()
    } else {
        floor_to(&(room * ratio(rng.gen_range(1..=GRID), GRID) / top), 1000)
    };
    let matrix = Matrix::from_fn(n, |i, j| p + &alpha * &centered[(i, j)]);
    StepKernel::new(measures, matrix)
}

/// A PSD kernel `B·Bᵀ` on random measures.
pub fn random_psd(n: usize, seed: u64) -> Result<Kernel> {
    let mut rng = rng_for(seed);
    let measures = random_measures(n, rng.gen());
    let rank = rng.gen_range(1..=n);
    StepKernel::new(measures, gram(&random_factor(&mut rng, n, rank)))
}

/// A symmetric kernel with entries in `[−2, 2]` on random measures.
pub fn random_symmetric(n: usize, seed: u64) -> Result<Kernel> {
    let measures = random_measures(n, rng_for(seed).gen());
    random_symmetric_on(&measures, seed ^ 0x5eed)
}

/// A symmetric kernel with entries in `[−2, 2]` on the given measures.
pub fn random_symmetric_on(measures: &[Rational], seed: u64) -> Result<Kernel> {
    let mut rng = rng_for(seed);
    let n = measures.len();
    let mut m = Matrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            let v = grid_value(&mut rng, -2, 2);
            m[(i, j)] = v.clone();
            m[(j, i)] = v;
        }
    }
    StepKernel::new(measures.to_vec(), m)
}

/// A random PSD kernel on the given measures, for pairing with another kernel.
pub fn random_psd_on(measures: &[Rational], seed: u64) -> Result<Kernel> {
    let mut rng = rng_for(seed);
    let n = measures.len();
    let rank = rng.gen_range(1..=n.max(1));
    StepKernel::new(measures.to_vec(), gram(&random_factor(&mut rng, n, rank)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cones::{is_locally_dense, is_psd};
    use crate::scalar::int;

    #[test]
    fn zero_regular_generator() {
        for seed in 0..100 {
            let n = 2 + (seed as usize % 4);
            let mu = random_measures(n, seed ^ 0xabc);
            let w = gen_psd_zero_regular(n, &mu, seed).unwrap();
            assert!(is_psd(&w).holds);
            assert!(w.is_regular(&int(0)));
        }
        let w = gen_psd_zero_regular(2, &uniform_measures(2), 7).unwrap();
        let a = w.entry(0, 0).clone();
        assert!(!a.is_negative());
        assert_eq!(w.matrix(), &Matrix::from_fn(2, |i, j| if i == j { a.clone() } else { -a.clone() }));
        assert_eq!(gen_psd_zero_regular(3, &uniform_measures(3), 9).unwrap(),
                   gen_psd_zero_regular(3, &uniform_measures(3), 9).unwrap());
    }

    #[test]
    fn locally_dense_generator() {
        for p in [ratio(1, 5), ratio(1, 2), ratio(9, 10)] {
            for seed in 0..100 {
                let w = gen_locally_dense(&p, 1 + seed as usize % 4, seed).unwrap();
                assert!(w.is_graphon());
                assert!(is_locally_dense(&w, &p).unwrap().holds, "seed {seed}");
            }
        }
        assert!(gen_locally_dense(&int(1), 2, 0).is_err());
    }

    #[test]
    fn regular_generator() {
        let p = ratio(1, 3);
        let mut dense = 0;
        for seed in 0..60 {
            let w = gen_regular_graphon(&p, 2 + seed as usize % 3, seed).unwrap();
            assert!(w.is_graphon());
            assert!(w.is_regular(&p));
            if is_locally_dense(&w, &p).unwrap().holds {
                dense += 1;
            }
        }
        assert!(dense > 10 && dense < 60, "{dense}");
    }
}
