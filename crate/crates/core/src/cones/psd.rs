//! Exact positive semidefiniteness by pivoted symmetric elimination.

use num_traits::{One, Signed, Zero};

use crate::matrix::Matrix;
use crate::scalar::Rational;

fn unit_pair(n: usize, i: usize, j: usize, a_ij: &Rational) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v[j] = if a_ij.is_positive() {
        -Rational::one()
    } else {
        Rational::one()
    };
    v
}

/// A vector `v` with `vᵀMv < 0`, or `None` when `M` is positive semidefinite.
pub fn psd_witness(m: &Matrix<Rational>) -> Option<Vec<Rational>> {
    let n = m.dim();
    if let Some(i) = (0..n).find(|&i| m[(i, i)].is_negative()) {
        let mut v = vec![Rational::zero(); n];
        v[i] = Rational::one();
        return Some(v);
    }
    for i in 0..n {
        for j in i + 1..n {
            let a = &m[(i, j)];
            if &m[(i, i)] + &m[(j, j)] < a.abs() * Rational::from_integer(2.into()) {
                return Some(unit_pair(n, i, j, a));
            }
        }
    }

    let mut s: Vec<Vec<Rational>> = m.rows().map(<[Rational]>::to_vec).collect();
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut eliminated: Vec<usize> = Vec::new();
    loop {
        if remaining.is_empty() {
            return None;
        }
        // local vector y on `remaining` with yᵀ S y < 0
        let local: Option<Vec<(usize, Rational)>> =
            if let Some(&r) = remaining.iter().find(|&&r| s[r][r].is_negative()) {
                Some(vec![(r, Rational::one())])
            } else {
                let pivot = *remaining
                    .iter()
                    .max_by(|&&x, &&y| s[x][x].cmp(&s[y][y]).then(y.cmp(&x)))
                    .unwrap();
                if s[pivot][pivot].is_zero() {
                    let pair = remaining.iter().enumerate().find_map(|(a, &i)| {
                        remaining[a + 1..]
                            .iter()
                            .find(|&&j| !s[i][j].is_zero())
                            .map(|&j| (i, j))
                    });
                    match pair {
                        None => return None,
                        Some((i, j)) => {
                            let sign = if s[i][j].is_positive() {
                                -Rational::one()
                            } else {
                                Rational::one()
                            };
                            Some(vec![(i, Rational::one()), (j, sign)])
                        }
                    }
                } else {
                    let d = s[pivot][pivot].clone();
                    let others: Vec<usize> =
                        remaining.iter().copied().filter(|&r| r != pivot).collect();
                    for &i in &others {
                        if s[i][pivot].is_zero() {
                            continue;
                        }
                        let f = &s[i][pivot] / &d;
                        for &j in &others {
                            let delta = &f * &s[pivot][j];
                            s[i][j] -= delta;
                        }
                    }
                    remaining.retain(|&r| r != pivot);
                    eliminated.push(pivot);
                    None
                }
            };
        if let Some(y) = local {
            return Some(lift(m, &eliminated, &y));
        }
    }
}

/// Extends `y` to a full vector whose form equals the Schur-complement form of `y`.
fn lift(m: &Matrix<Rational>, eliminated: &[usize], y: &[(usize, Rational)]) -> Vec<Rational> {
    let n = m.dim();
    let mut v = vec![Rational::zero(); n];
    for (i, yi) in y {
        v[*i] = yi.clone();
    }
    if !eliminated.is_empty() {
        let a_ee = m.principal(eliminated);
        let rhs: Vec<Rational> = eliminated
            .iter()
            .map(|&e| -y.iter().map(|(r, yr)| &m[(e, *r)] * yr).sum::<Rational>())
            .collect();
        let x = a_ee
            .solve(&rhs)
            .expect("eliminated block has positive pivots");
        for (&e, xe) in eliminated.iter().zip(x) {
            v[e] = xe;
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect())
            .unwrap()
    }

    fn assert_negative(a: &Matrix<Rational>) {
        let w = psd_witness(a).expect("expected a witness");
        assert!(a.quadratic_form(&w).is_negative(), "{w:?}");
    }

    #[test]
    fn pair_witness() {
        let a = m(&[&[1, 2], &[2, 1]]);
        let w = psd_witness(&a).unwrap();
        assert_eq!(w, vec![int(1), int(-1)]);
        assert_eq!(a.quadratic_form(&w), int(-2));
    }

    #[test]
    fn psd_matrices() {
        assert!(psd_witness(&Matrix::zeros(3)).is_none());
        assert!(psd_witness(&m(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]])).is_none());
        // rank one, singular
        assert!(psd_witness(&m(&[&[1, 2, 3], &[2, 4, 6], &[3, 6, 9]])).is_none());
        assert!(psd_witness(&m(&[&[1, -1], &[-1, 1]])).is_none());
    }

    #[test]
    fn schur_witnesses() {
        // passes the diagonal and pair scans but has determinant < 0
        assert_negative(&m(&[&[5, 4, 4], &[4, 5, -4], &[4, -4, 5]]));
        assert_negative(&m(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, 1]]));
    }

    #[test]
    fn zero_diagonal_after_elimination() {
        // Schur complement of the first pivot has zero diagonal, nonzero off-diagonal
        let a = m(&[&[1, 1, 1], &[1, 1, 0], &[1, 0, 1]]);
        assert_negative(&a);
    }
}
