//! Step kernels: symmetric block-constant functions on a finite partition with positive
//! block measures, and the operations on them (operator, tensor and Hadamard products,
//! shifts, degree functions, change of measure).

mod io;
mod named;

pub use io::{kernel_from_json, kernel_to_json, KernelJson};
pub use named::{counterexample_4x4, counterexample_5x5, resolve_named};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// One value per block.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockFunction<T> {
    values: Vec<T>,
}

impl<T: Scalar> BlockFunction<T> {
    pub fn new(values: Vec<T>) -> Self {
        Self { values }
    }

    pub fn ones(blocks: usize) -> Self {
        Self::new(vec![T::one(); blocks])
    }

    pub fn zeros(blocks: usize) -> Self {
        Self::new(vec![T::zero(); blocks])
    }

    /// Indicator of a set of blocks.
    pub fn indicator(blocks: usize, set: &[usize]) -> Self {
        let mut values = vec![T::zero(); blocks];
        for &i in set {
            values[i] = T::one();
        }
        Self::new(values)
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.values.iter().all(|v| !v.is_negative())
    }

    /// `‖f‖₁ = Σ μ_i |f_i|`.
    pub fn norm1(&self, measures: &[T]) -> Result<T> {
        check_len(measures.len(), self.len())?;
        let mut total = T::zero();
        for (m, v) in measures.iter().zip(&self.values) {
            total.add_assign_ref(&m.mul_ref(&v.abs()));
        }
        Ok(total)
    }

    /// `⟨f, g⟩ = Σ μ_i f_i g_i`.
    pub fn inner(&self, other: &Self, measures: &[T]) -> Result<T> {
        check_len(measures.len(), self.len())?;
        check_len(self.len(), other.len())?;
        let mut total = T::zero();
        for ((m, x), y) in measures.iter().zip(&self.values).zip(&other.values) {
            total.add_assign_ref(&m.mul_ref(x).mul_ref(y));
        }
        Ok(total)
    }
}

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// A block-constant kernel: block measures `μ` (positive, summing to one) and a
/// symmetric matrix of block values.
#[derive(Clone, Debug, PartialEq)]
pub struct StepKernel<T> {
    measures: Vec<T>,
    matrix: Matrix<T>,
}

impl<T: Scalar> StepKernel<T> {
    pub fn new(measures: Vec<T>, matrix: Matrix<T>) -> Result<Self> {
        if measures.is_empty() {
            return Err(Error::InvalidKernel("a kernel needs at least one block".into()));
        }
        check_len(measures.len(), matrix.dim())?;
        if let Some(i) = measures.iter().position(|m| !m.is_positive()) {
            return Err(Error::InvalidKernel(format!("block {i} has non-positive measure")));
        }
        let mut total = T::zero();
        for m in &measures {
            total.add_assign_ref(m);
        }
        if !total.approx_eq(&T::one()) {
            return Err(Error::InvalidKernel(format!("block measures sum to {total}, not 1")));
        }
        if let Some((i, j)) = matrix.asymmetry() {
            return Err(Error::InvalidKernel(format!("matrix is not symmetric at ({i}, {j})")));
        }
        Ok(Self { measures, matrix })
    }

    /// Equal block measures `1/n`.
    pub fn uniform(matrix: Matrix<T>) -> Result<Self> {
        let n = matrix.dim();
        if n == 0 {
            return Err(Error::InvalidKernel("a kernel needs at least one block".into()));
        }
        Self::new(vec![T::from_ratio(1, n as i64); n], matrix)
    }

    /// The one-block graphon with value `p ∈ [0, 1]`.
    pub fn constant(p: T) -> Result<Self> {
        if p.is_negative() || p > T::one() {
            return Err(Error::InvalidArgument(format!("constant graphon value {p} outside [0, 1]")));
        }
        Self::new(vec![T::one()], Matrix::filled(1, p))
    }

    /// The constant kernel `c` on the given blocks.
    pub fn constant_on(measures: Vec<T>, value: T) -> Result<Self> {
        let n = measures.len();
        Self::new(measures, Matrix::filled(n, value))
    }

    pub fn blocks(&self) -> usize {
        self.measures.len()
    }

    pub fn measures(&self) -> &[T] {
        &self.measures
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> &T {
        &self.matrix[(i, j)]
    }

    /// All entries lie in `[0, 1]`.
    pub fn is_graphon(&self) -> bool {
        self.matrix
            .as_slice()
            .iter()
            .all(|v| !v.is_negative() && *v <= T::one())
    }

    pub fn ensure_graphon(&self) -> Result<()> {
        if self.is_graphon() {
            Ok(())
        } else {
            Err(Error::InvalidKernel("kernel entries must lie in [0, 1]".into()))
        }
    }

    fn same_measures(&self, other: &Self) -> Result<()> {
        let same = self.blocks() == other.blocks()
            && self
                .measures
                .iter()
                .zip(&other.measures)
                .all(|(a, b)| a.approx_eq(b));
        if same {
            Ok(())
        } else {
            Err(Error::MeasureMismatch)
        }
    }

    /// `d(i) = Σ_j μ_j A[i, j]`.
    pub fn degree_function(&self) -> BlockFunction<T> {
        self.apply(&BlockFunction::ones(self.blocks()))
            .expect("dimensions agree")
    }

    /// Every block degree equals `p`.
    pub fn is_regular(&self, p: &T) -> bool {
        self.degree_function().values().iter().all(|d| d.approx_eq(p))
    }

    /// `(T_W f)(i) = Σ_j μ_j A[i, j] f_j`.
    pub fn apply(&self, f: &BlockFunction<T>) -> Result<BlockFunction<T>> {
        check_len(self.blocks(), f.len())?;
        let weighted: Vec<T> = self
            .measures
            .iter()
            .zip(f.values())
            .map(|(m, v)| m.mul_ref(v))
            .collect();
        let values = self
            .matrix
            .rows()
            .map(|row| {
                let mut acc = T::zero();
                for (a, w) in row.iter().zip(&weighted) {
                    acc.add_assign_ref(&a.mul_ref(w));
                }
                acc
            })
            .collect();
        Ok(BlockFunction::new(values))
    }

    /// `(W₁ ∘ W₂)[i, j] = Σ_k A₁[i, k] μ_k A₂[k, j]`.
    pub fn operator_product(&self, other: &Self) -> Result<Self> {
        self.same_measures(other)?;
        let n = self.blocks();
        let scaled = Matrix::from_fn(n, |i, k| self.matrix[(i, k)].mul_ref(&self.measures[k]));
        let mut product = scaled.matmul(&other.matrix);
        // round-off can break symmetry of float products of commuting kernels
        if !T::EXACT {
            for i in 0..n {
                for j in (i + 1)..n {
                    let avg = (product[(i, j)].clone() + product[(j, i)].clone())
                        / T::from_ratio(2, 1);
                    product[(i, j)] = avg.clone();
                    product[(j, i)] = avg;
                }
            }
        }
        if let Some((i, j)) = product.asymmetry() {
            return Err(Error::InvalidKernel(format!(
                "operator product of non-commuting kernels is not symmetric at ({i}, {j})"
            )));
        }
        Ok(Self {
            measures: self.measures.clone(),
            matrix: product,
        })
    }

    /// `W' ∘ W ∘ W'`, symmetric for any symmetric `W'`.
    pub fn sandwich(&self, outer: &Self) -> Result<Self> {
        self.same_measures(outer)?;
        let n = self.blocks();
        let left = outer.operator_product_matrix(self)?;
        let scaled = Matrix::from_fn(n, |i, k| left[(i, k)].mul_ref(&self.measures[k]));
        Self::new(self.measures.clone(), scaled.matmul(outer.matrix()))
    }

    /// Raw, possibly non-symmetric, operator product matrix.
    pub fn operator_product_matrix(&self, other: &Self) -> Result<Matrix<T>> {
        self.same_measures(other)?;
        let n = self.blocks();
        let scaled = Matrix::from_fn(n, |i, k| self.matrix[(i, k)].mul_ref(&self.measures[k]));
        Ok(scaled.matmul(&other.matrix))
    }

    /// `W^{∘k}` for `k ≥ 1`.
    pub fn operator_power(&self, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("operator power must be at least 1".into()));
        }
        let mut result = self.clone();
        for _ in 1..k {
            result = result.operator_product(self)?;
        }
        Ok(result)
    }

    /// `W₁ ⊗ W₂` on the product partition; block `(i, j)` has index `i·n₂ + j`.
    pub fn tensor_product(&self, other: &Self) -> Self {
        let (n1, n2) = (self.blocks(), other.blocks());
        let measures = (0..n1 * n2)
            .map(|ij| self.measures[ij / n2].mul_ref(&other.measures[ij % n2]))
            .collect();
        let matrix = Matrix::from_fn(n1 * n2, |a, b| {
            self.matrix[(a / n2, b / n2)].mul_ref(&other.matrix[(a % n2, b % n2)])
        });
        Self { measures, matrix }
    }

    /// `k`-fold tensor power, `k ≥ 1`.
    pub fn tensor_power(&self, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("tensor power must be at least 1".into()));
        }
        let mut result = self.clone();
        for _ in 1..k {
            result = result.tensor_product(self);
        }
        Ok(result)
    }

    /// Entrywise product.
    pub fn hadamard_product(&self, other: &Self) -> Result<Self> {
        self.same_measures(other)?;
        let n = self.blocks();
        Ok(Self {
            measures: self.measures.clone(),
            matrix: Matrix::from_fn(n, |i, j| self.matrix[(i, j)].mul_ref(&other.matrix[(i, j)])),
        })
    }

    /// `W + c`.
    pub fn shift(&self, c: &T) -> Self {
        Self {
            measures: self.measures.clone(),
            matrix: self.matrix.map(|v| v.clone() + c.clone()),
        }
    }

    /// `c·W`.
    pub fn scale(&self, c: &T) -> Self {
        Self {
            measures: self.measures.clone(),
            matrix: self.matrix.map(|v| v.mul_ref(c)),
        }
    }

    /// `W₁ + W₂` on identical blocks.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_measures(other)?;
        let n = self.blocks();
        Ok(Self {
            measures: self.measures.clone(),
            matrix: Matrix::from_fn(n, |i, j| {
                self.matrix[(i, j)].clone() + other.matrix[(i, j)].clone()
            }),
        })
    }

    /// Same kernel under the measure `μ'_i ∝ μ_i w_i`; blocks of zero weight are dropped.
    pub fn reweight(&self, w: &BlockFunction<T>) -> Result<Self> {
        check_len(self.blocks(), w.len())?;
        if !w.is_nonnegative() {
            return Err(Error::InvalidArgument("reweighting function must be nonnegative".into()));
        }
        let mass = w.norm1(&self.measures)?;
        if mass.is_zero() {
            return Err(Error::InvalidArgument("reweighting function vanishes".into()));
        }
        let keep: Vec<usize> = (0..self.blocks()).filter(|&i| !w.values()[i].is_zero()).collect();
        let measures = keep
            .iter()
            .map(|&i| self.measures[i].mul_ref(&w.values()[i]) / mass.clone())
            .collect();
        Self::new(measures, self.matrix.principal(&keep))
    }

    /// Relabels block `i` as `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let n = self.blocks();
        check_len(n, perm.len())?;
        let mut inverse = vec![usize::MAX; n];
        for (i, &p) in perm.iter().enumerate() {
            if p >= n || inverse[p] != usize::MAX {
                return Err(Error::InvalidArgument("not a permutation of the blocks".into()));
            }
            inverse[p] = i;
        }
        let measures = inverse.iter().map(|&i| self.measures[i].clone()).collect();
        let matrix = Matrix::from_fn(n, |a, b| self.matrix[(inverse[a], inverse[b])].clone());
        Ok(Self { measures, matrix })
    }

    /// `∫∫_{U×U} W` for `U` the union of the given blocks.
    pub fn mass_on(&self, set: &[usize]) -> T {
        let mut total = T::zero();
        for &i in set {
            for &j in set {
                total.add_assign_ref(
                    &self.measures[i].mul_ref(&self.measures[j]).mul_ref(&self.matrix[(i, j)]),
                );
            }
        }
        total
    }

    /// `∫∫_{U×U} W / |U|²`.
    pub fn internal_density(&self, set: &[usize]) -> Result<T> {
        let mut size = T::zero();
        for &i in set {
            size.add_assign_ref(&self.measures[i]);
        }
        if size.is_zero() {
            return Err(Error::InvalidArgument("empty block set".into()));
        }
        Ok(self.mass_on(set) / size.mul_ref(&size))
    }

    /// `∫∫ W`.
    pub fn mass(&self) -> T {
        let all: Vec<usize> = (0..self.blocks()).collect();
        self.mass_on(&all)
    }

    /// `∫∫ f(x) W(x,y) f(y)`.
    pub fn quadratic_form(&self, f: &BlockFunction<T>) -> Result<T> {
        check_len(self.blocks(), f.len())?;
        let weighted: Vec<T> = self
            .measures
            .iter()
            .zip(f.values())
            .map(|(m, v)| m.mul_ref(v))
            .collect();
        Ok(self.matrix.quadratic_form(&weighted))
    }

    pub fn to_f64(&self) -> StepKernel<f64> {
        StepKernel {
            measures: self.measures.iter().map(Scalar::to_f64).collect(),
            matrix: self.matrix.to_f64(),
        }
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> StepKernel<U> {
        StepKernel {
            measures: self.measures.iter().map(&f).collect(),
            matrix: self.matrix.map(&f),
        }
    }
}

impl<T: Scalar> StepKernel<T> {
    /// The constant one kernel on the same blocks, the Hadamard identity.
    pub fn ones_like(&self) -> Self {
        Self {
            measures: self.measures.clone(),
            matrix: Matrix::filled(self.blocks(), T::one()),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.as_slice().iter().all(Zero::is_zero)
    }

    /// `(W - c)` vanishes identically, i.e. the kernel is the constant `c`.
    pub fn is_constant(&self, c: &T) -> bool {
        self.matrix.as_slice().iter().all(|v| v.approx_eq(c))
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;
    use crate::scalar::{int, ratio, Rational};
    use crate::Kernel;

    fn uniform(rows: &[&[i64]]) -> Kernel {
        let m = Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
            .unwrap();
        StepKernel::uniform(m).unwrap()
    }

    #[test]
    fn constants() {
        let zero = Kernel::constant(int(0)).unwrap();
        assert!(zero.is_zero());
        let half = Kernel::constant(ratio(1, 2)).unwrap();
        assert_eq!(half.matrix().as_slice(), &[ratio(1, 2)]);
        assert!(Kernel::constant(int(2)).is_err());
        assert!(Kernel::constant(int(-1)).is_err());
        assert_eq!(half.degree_function().values(), &[ratio(1, 2)]);
        assert!(half.is_regular(&ratio(1, 2)));
    }

    #[test]
    fn validation() {
        let m = Matrix::from_rows(vec![vec![int(0), int(1)], vec![int(2), int(0)]]).unwrap();
        assert!(Kernel::uniform(m).is_err());
        let sym = Matrix::filled(2, int(1));
        assert!(Kernel::new(vec![ratio(1, 2), ratio(1, 3)], sym.clone()).is_err());
        assert!(Kernel::new(vec![int(1), int(0)], sym.clone()).is_err());
        assert!(Kernel::new(vec![int(1)], sym).is_err());
    }

    #[test]
    fn four_block_degrees() {
        let p = ratio(1, 5);
        let w = counterexample_4x4(&p).unwrap();
        let quarter = |k: i64| &p * ratio(k, 4);
        assert_eq!(
            w.degree_function().values(),
            &[quarter(3), quarter(5), quarter(5), quarter(5)]
        );
        assert!(!w.is_regular(&p));
        let z = counterexample_5x5();
        assert_eq!(z.degree_function(), BlockFunction::zeros(5));
        assert!(z.is_regular(&int(0)));
    }

    #[test]
    fn operator_products() {
        let p = ratio(3, 10);
        let c = Kernel::constant(p.clone()).unwrap();
        assert_eq!(c.operator_product(&c).unwrap(), Kernel::constant(&p * &p).unwrap());
        let w = counterexample_4x4(&p).unwrap();
        for ell in 1..7usize {
            let pow = w.operator_power(ell).unwrap();
            let expected = num_traits::pow(int(3) * &p, ell) / num_traits::pow(int(4), ell - 1);
            assert_eq!(pow.entry(0, 0), &expected, "ell = {ell}");
        }
        assert_eq!(w.operator_power(1).unwrap(), w);
        assert!(w.operator_power(0).is_err());
        let sq = counterexample_5x5().operator_power(2).unwrap();
        for i in 0..5 {
            assert!(!sq.entry(i, i).is_negative());
        }
        let other = Kernel::constant_on(vec![ratio(1, 2), ratio(1, 2)], int(1)).unwrap();
        let skew = Kernel::new(vec![ratio(1, 3), ratio(2, 3)], Matrix::filled(2, int(1))).unwrap();
        assert_eq!(other.operator_product(&skew), Err(Error::MeasureMismatch));
    }

    #[test]
    fn tensor_products() {
        let (p, q) = (ratio(1, 2), ratio(1, 3));
        let t = Kernel::constant(p.clone())
            .unwrap()
            .tensor_product(&Kernel::constant(q.clone()).unwrap());
        assert_eq!(t, Kernel::constant(&p * &q).unwrap());
        let a = Kernel::new(vec![ratio(1, 3), ratio(2, 3)], Matrix::filled(2, int(1))).unwrap();
        let b = Kernel::new(vec![ratio(1, 4), ratio(3, 4)], Matrix::filled(2, int(1))).unwrap();
        let ab = a.tensor_product(&b);
        assert_eq!(ab.blocks(), 4);
        assert_eq!(
            ab.measures(),
            &[ratio(1, 12), ratio(3, 12), ratio(2, 12), ratio(6, 12)]
        );
    }

    #[test]
    fn hadamard_shift_scale() {
        let w = counterexample_4x4(&ratio(1, 5)).unwrap();
        assert_eq!(w.hadamard_product(&w.ones_like()).unwrap(), w);
        let sq = w.hadamard_product(&w).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(sq.entry(i, j), &(w.entry(i, j) * w.entry(i, j)));
            }
        }
        let p = ratio(2, 7);
        assert!(Kernel::constant(p.clone()).unwrap().shift(&-p.clone()).is_zero());
        assert_eq!(w.scale(&int(2)).entry(0, 0), &(int(2) * w.entry(0, 0)));
    }

    #[test]
    fn block_functions() {
        let w = counterexample_4x4(&ratio(1, 5)).unwrap();
        let ones = BlockFunction::ones(4);
        assert_eq!(w.apply(&ones).unwrap(), w.degree_function());
        assert_eq!(ones.norm1(w.measures()).unwrap(), int(1));
        let z = counterexample_5x5();
        assert_eq!(z.apply(&BlockFunction::ones(5)).unwrap(), BlockFunction::zeros(5));
        let f = BlockFunction::new(vec![int(1), int(-2), int(0), int(3)]);
        assert_eq!(f.norm1(w.measures()).unwrap(), ratio(6, 4));
        assert_eq!(f.inner(&ones, w.measures()).unwrap(), ratio(2, 4));
        assert!(w.apply(&BlockFunction::ones(3)).is_err());
    }

    #[test]
    fn reweighting() {
        let w = counterexample_4x4(&ratio(1, 5)).unwrap();
        assert_eq!(w.reweight(&BlockFunction::ones(4)).unwrap(), w);
        let two = uniform(&[&[7, 1], &[1, 3]]);
        let r = two.reweight(&BlockFunction::new(vec![int(1), int(0)])).unwrap();
        assert_eq!(r.blocks(), 1);
        assert_eq!(r.entry(0, 0), &int(7));
        assert!(two.reweight(&BlockFunction::zeros(2)).is_err());
        assert!(two.reweight(&BlockFunction::new(vec![int(1), int(-1)])).is_err());
        let skew = two.reweight(&BlockFunction::new(vec![int(1), int(3)])).unwrap();
        assert_eq!(skew.measures(), &[ratio(1, 4), ratio(3, 4)]);
    }

    #[test]
    fn internal_densities() {
        let p = ratio(1, 10);
        let w = counterexample_4x4(&p).unwrap();
        for j in 1..4 {
            let set: Vec<usize> = (0..4).filter(|&i| i != j).collect();
            assert_eq!(w.internal_density(&set).unwrap(), p);
        }
        assert_eq!(w.mass(), &p * ratio(9, 8));
    }

    #[test]
    fn permutation_roundtrip() {
        let w = counterexample_5x5();
        let perm = [2, 0, 4, 1, 3];
        let pw = w.permuted(&perm).unwrap();
        assert_eq!(pw.entry(perm[1], perm[3]), w.entry(1, 3));
        assert!(w.permuted(&[0, 0, 1, 2, 3]).is_err());
        let _: Rational = pw.mass();
    }
}
