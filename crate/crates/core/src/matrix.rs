//! Dense square matrices over a [`Ring`].

use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::scalar::{Ring, Scalar};

/// Row-major square matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    dim: usize,
    data: Vec<T>,
}

impl<T: Ring> Matrix<T> {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![T::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn filled(dim: usize, value: T) -> Self {
        Self {
            dim,
            data: vec![value; dim * dim],
        }
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    /// Builds a matrix from rows, rejecting ragged or non-square input.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Self { dim, data })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.data.chunks(self.dim.max(1)).take(self.dim)
    }

    pub fn map<U: Ring>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            dim: self.dim,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].clone())
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "matmul dimension mismatch");
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let term = a.mul_ref(&rhs[(k, j)]);
                    out[(i, j)].add_assign_ref(&term);
                }
            }
        }
        out
    }

    /// Principal submatrix on the given (ordered) index set.
    pub fn principal(&self, indices: &[usize]) -> Self {
        Self::from_fn(indices.len(), |i, j| {
            self[(indices[i], indices[j])].clone()
        })
    }

    pub fn trace(&self) -> T {
        let mut t = T::zero();
        for i in 0..self.dim {
            t.add_assign_ref(&self[(i, i)]);
        }
        t
    }

    /// `vᵀ M w`.
    pub fn bilinear(&self, v: &[T], w: &[T]) -> T {
        let mut total = T::zero();
        for i in 0..self.dim {
            if v[i].is_zero() {
                continue;
            }
            let mut row = T::zero();
            for j in 0..self.dim {
                row.add_assign_ref(&self[(i, j)].mul_ref(&w[j]));
            }
            total.add_assign_ref(&v[i].mul_ref(&row));
        }
        total
    }

    pub fn quadratic_form(&self, v: &[T]) -> T {
        self.bilinear(v, v)
    }
}

impl<T: Scalar> Matrix<T> {
    /// First asymmetric pair, if any (using [`Scalar::approx_eq`]).
    pub fn asymmetry(&self) -> Option<(usize, usize)> {
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                if !self[(i, j)].approx_eq(&self[(j, i)]) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_symmetric(&self) -> bool {
        self.asymmetry().is_none()
    }

    pub fn to_f64(&self) -> Matrix<f64> {
        self.map(Scalar::to_f64)
    }

    /// Solves `M x = b` by Gaussian elimination with largest-magnitude pivoting;
    /// `None` if `M` is singular.
    pub fn solve(&self, rhs: &[T]) -> Option<Vec<T>> {
        let n = self.dim;
        assert_eq!(rhs.len(), n, "right-hand side length");
        let mut a: Vec<Vec<T>> = self.rows().map(<[T]>::to_vec).collect();
        let mut b = rhs.to_vec();
        for col in 0..n {
            let pivot = (col..n)
                .filter(|&r| !a[r][col].is_zero())
                .max_by(|&x, &y| {
                    a[x][col]
                        .abs()
                        .partial_cmp(&a[y][col].abs())
                        .unwrap_or(std::cmp::Ordering::Equal)
                })?;
            a.swap(col, pivot);
            b.swap(col, pivot);
            for r in (col + 1)..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col].clone() / a[col][col].clone();
                let (top, bottom) = a.split_at_mut(r);
                for (x, y) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                    *x = x.clone() - factor.mul_ref(y);
                }
                let delta = factor.mul_ref(&b[col]);
                b[r] = b[r].clone() - delta;
            }
        }
        let mut x = vec![T::zero(); n];
        for r in (0..n).rev() {
            let mut acc = b[r].clone();
            for c in (r + 1)..n {
                acc = acc - a[r][c].mul_ref(&x[c]);
            }
            x[r] = acc / a[r][r].clone();
        }
        Some(x)
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.dim + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.dim + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, Rational};

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn products_and_forms() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let b = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(a.matmul(&b), m(&[&[2, 1], &[4, 3]]));
        assert_eq!(a.transpose(), m(&[&[1, 3], &[2, 4]]));
        assert_eq!(a.trace(), int(5));
        assert_eq!(a.quadratic_form(&[int(1), int(-1)]), int(0));
        assert_eq!(a.principal(&[1]), m(&[&[4]]));
        assert_eq!(a.asymmetry(), Some((0, 1)));
        assert!(b.is_symmetric());
    }

    #[test]
    fn linear_solve() {
        let a = m(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let x = a.solve(&[int(1), int(2), int(3)]).unwrap();
        let back: Vec<Rational> = (0..3)
            .map(|i| (0..3).map(|j| &a[(i, j)] * &x[j]).sum())
            .collect();
        assert_eq!(back, vec![int(1), int(2), int(3)]);
        assert!(m(&[&[1, 2], &[2, 4]]).solve(&[int(1), int(1)]).is_none());
    }

    #[test]
    fn ragged_rows_rejected() {
        assert!(Matrix::<Rational>::from_rows(vec![vec![int(1), int(2)], vec![int(1)]]).is_err());
    }
}
