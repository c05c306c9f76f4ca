use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::kernels::StepKernel;
use crate::scalar::{clear_denominators, Rational};

/// Largest block count accepted by [`cut_norm`].
pub const CUT_NORM_CAP: usize = 14;

/// Exact cut norm `max_{S,T} |Σ_{i∈S, j∈T} μ_i μ_j A_ij|` over block subsets.
///
/// For fixed `S` the best `T` collects the columns whose partial sums share a sign, so
/// only the `2^n` row subsets are enumerated (in Gray-code order).
pub fn cut_norm(kernel: &StepKernel<Rational>) -> Result<Rational> {
    let n = kernel.blocks();
    if n > CUT_NORM_CAP {
        return Err(Error::CapExceeded {
            what: "cut norm blocks",
            cap: CUT_NORM_CAP as u64,
            got: n as u64,
        });
    }
    let mu = kernel.measures();
    let weighted: Vec<Rational> = (0..n * n)
        .map(|k| {
            let (i, j) = (k / n, k % n);
            &mu[i] * &mu[j] * kernel.entry(i, j)
        })
        .collect();
    let (ints, den) = clear_denominators(&weighted);

    let mut column = vec![BigInt::zero(); n];
    let mut best = BigInt::zero();
    let mut in_set = vec![false; n];
    for step in 1u32..(1 << n) {
        let flip = step.trailing_zeros() as usize;
        in_set[flip] = !in_set[flip];
        let row = &ints[flip * n..(flip + 1) * n];
        for (c, v) in column.iter_mut().zip(row) {
            if in_set[flip] {
                *c += v;
            } else {
                *c -= v;
            }
        }
        let mut pos = BigInt::zero();
        let mut neg = BigInt::zero();
        for c in &column {
            if c.is_positive() {
                pos += c;
            } else {
                neg -= c;
            }
        }
        best = best.max(pos).max(neg);
    }
    Ok(Rational::new(best, den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Matrix;
    use crate::scalar::{int, ratio};

    #[test]
    fn single_block() {
        let w = StepKernel::constant(ratio(1, 3)).unwrap();
        assert_eq!(cut_norm(&w.shift(&ratio(-1, 2))).unwrap(), ratio(1, 6));
        assert_eq!(cut_norm(&StepKernel::constant(int(0)).unwrap()).unwrap(), int(0));
    }

    #[test]
    fn matches_pair_enumeration() {
        let a = Matrix::from_rows(vec![
            vec![int(1), int(-2), ratio(1, 2)],
            vec![int(-2), int(3), int(0)],
            vec![ratio(1, 2), int(0), int(-1)],
        ])
        .unwrap();
        let w = StepKernel::new(vec![ratio(1, 2), ratio(1, 3), ratio(1, 6)], a).unwrap();
        let mut best = int(0);
        for s in 0u32..8 {
            for t in 0u32..8 {
                let mut sum = int(0);
                for i in 0..3 {
                    for j in 0..3 {
                        if s >> i & 1 == 1 && t >> j & 1 == 1 {
                            sum += &w.measures()[i] * &w.measures()[j] * w.entry(i, j);
                        }
                    }
                }
                best = best.max(sum.abs());
            }
        }
        assert_eq!(cut_norm(&w).unwrap(), best);
    }
}
