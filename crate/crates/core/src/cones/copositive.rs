//! Exact minimum of a quadratic form over the standard simplex.
//!
//! Every local minimizer of `xᵀMx` on the simplex is a KKT point of the face spanned
//! by its support `S`: `M_S x = λ·1`, `1ᵀx = 1`, `x > 0` on `S`, and the value there is
//! `λ`. A minimizer of smallest support has a nonsingular KKT matrix, so enumerating the
//! supports and skipping singular systems still reaches the global minimum.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, PrimInt, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{clear_denominators, Rational};

/// Largest dimension accepted by [`min_simplex_quadratic`].
pub const COPOSITIVE_CAP: usize = 16;

#[derive(Clone, Debug, PartialEq)]
pub struct SimplexMinimum {
    pub value: Rational,
    pub argmin: Vec<Rational>,
}

trait Exact: Clone + Zero + One + PartialOrd + Send + Sync {
    /// `(a·b − c·d) / e`, exact; `None` on overflow.
    fn cross(a: &Self, b: &Self, c: &Self, d: &Self, e: &Self) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn neg_one() -> Self;
}

macro_rules! impl_exact_int {
    ($t:ty) => {
        impl Exact for $t {
            fn cross(a: &Self, b: &Self, c: &Self, d: &Self, e: &Self) -> Option<Self> {
                let num = a.checked_mul(*b)?.checked_sub(c.checked_mul(*d)?)?;
                Some(num / e)
            }

            fn to_big(&self) -> BigInt {
                BigInt::from(*self)
            }

            fn neg_one() -> Self {
                -1
            }
        }
    };
}

impl_exact_int!(i64);
impl_exact_int!(i128);

impl Exact for BigInt {
    fn cross(a: &Self, b: &Self, c: &Self, d: &Self, e: &Self) -> Option<Self> {
        Some((a * b - c * d).div_floor(e))
    }

    fn to_big(&self) -> BigInt {
        self.clone()
    }

    fn neg_one() -> Self {
        -BigInt::one()
    }
}

enum Reduced<E> {
    Singular,
    Overflow,
    /// Row-major `(k+1) × (k+2)` upper-triangular augmented system.
    Upper(Vec<E>),
}

/// Fraction-free elimination of the KKT system of `support`:
/// `M_S x − λ·1 = 0`, `1ᵀx = 1`, unknowns `(x_S, λ)`.
fn bareiss<E: Exact>(m: &[E], n: usize, support: &[usize]) -> Reduced<E> {
    let k = support.len();
    let size = k + 1;
    let width = k + 2;
    let mut a = Vec::with_capacity(size * width);
    for &i in support {
        a.extend(support.iter().map(|&j| m[i * n + j].clone()));
        a.push(E::neg_one());
        a.push(E::zero());
    }
    a.extend(std::iter::repeat_n(E::one(), k));
    a.push(E::zero());
    a.push(E::one());

    let mut prev = E::one();
    for p in 0..size {
        if a[p * width + p].is_zero() {
            match (p + 1..size).find(|&r| !a[r * width + p].is_zero()) {
                Some(r) => {
                    for c in 0..width {
                        a.swap(p * width + c, r * width + c);
                    }
                }
                None => return Reduced::Singular,
            }
        }
        for r in p + 1..size {
            for c in p + 1..width {
                match E::cross(
                    &a[r * width + c],
                    &a[p * width + p],
                    &a[r * width + p],
                    &a[p * width + c],
                    &prev,
                ) {
                    Some(v) => a[r * width + c] = v,
                    None => return Reduced::Overflow,
                }
            }
            a[r * width + p] = E::zero();
        }
        prev = a[p * width + p].clone();
    }
    Reduced::Upper(a)
}

fn back_substitute<E: Exact>(u: &[E], size: usize) -> Vec<Rational> {
    let width = size + 1;
    let big = |v: &E| Rational::from_integer(v.to_big());
    let mut x = vec![Rational::zero(); size];
    for r in (0..size).rev() {
        let mut acc = big(&u[r * width + size]);
        for c in r + 1..size {
            acc -= big(&u[r * width + c]) * &x[c];
        }
        x[r] = acc / big(&u[r * width + r]);
    }
    x
}

struct Scaled {
    n: usize,
    word: Option<Vec<i64>>,
    small: Option<Vec<i128>>,
    big: Vec<BigInt>,
}

type Candidate = (Rational, u32, Vec<Rational>);

/// Solves the KKT system of `support`: `Some((λ, x_S))` if it is nonsingular, `x_S ≥ 0`
/// and `λ` beats `bound`. The outer `None` signals integer overflow.
fn solve_support<E: Exact>(
    m: &[E],
    n: usize,
    support: &[usize],
    bound: Option<&Rational>,
) -> Option<Option<(Rational, Vec<Rational>)>> {
    let k = support.len();
    let width = k + 2;
    match bareiss(m, n, support) {
        Reduced::Singular => Some(None),
        Reduced::Overflow => None,
        Reduced::Upper(u) => {
            let lambda = Rational::new(u[k * width + k + 1].to_big(), u[k * width + k].to_big());
            if bound.is_some_and(|b| &lambda >= b) {
                return Some(None);
            }
            let sol = back_substitute(&u, k + 1);
            if sol[..k].iter().any(|x| x.is_negative()) {
                return Some(None);
            }
            Some(Some((lambda, sol[..k].to_vec())))
        }
    }
}

fn min_entry(scaled: &Scaled, support: &[usize]) -> BigInt {
    let n = scaled.n;
    match &scaled.small {
        Some(m) => BigInt::from(
            support
                .iter()
                .flat_map(|&i| support.iter().map(move |&j| m[i * n + j]))
                .min()
                .expect("nonempty support"),
        ),
        None => support
            .iter()
            .flat_map(|&i| support.iter().map(move |&j| &scaled.big[i * n + j]))
            .min()
            .expect("nonempty support")
            .clone(),
    }
}

fn support_of(mask: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Best candidate among `masks` that improves on `seed`.
fn best_in(
    scaled: &Scaled,
    masks: impl Iterator<Item = u32>,
    seed: Option<&Rational>,
) -> Option<Candidate> {
    let n = scaled.n;
    let mut best: Option<Candidate> = None;
    for mask in masks {
        let support = support_of(mask, n);
        let bound = best.as_ref().map(|b| &b.0).or(seed);
        // xᵀMx on the face is at least its smallest entry
        if let Some(b) = bound {
            if &Rational::from_integer(min_entry(scaled, &support)) >= b {
                continue;
            }
        }
        let outcome = scaled
            .word
            .as_ref()
            .and_then(|m| solve_support(m, n, &support, bound))
            .or_else(|| {
                scaled
                    .small
                    .as_ref()
                    .and_then(|m| solve_support(m, n, &support, bound))
            })
            .or_else(|| solve_support(&scaled.big, n, &support, bound))
            .flatten();
        if let Some((lambda, x)) = outcome {
            best = Some((lambda, mask, x));
        }
    }
    best
}

/// Integer word used by the incremental walk.
trait Word: PrimInt + Signed + Send + Sync {}
impl Word for i64 {}
impl Word for i128 {}

struct Overflow;

/// Depth-first walk over the supports `S_0 < S_1 < …` that extend a fixed pair, carrying
/// the fraction-free elimination of the current chain. After `k` pivots, `pivots[q]` is the
/// leading minor `det M_{S_0..S_q}`, `rows[q][p]` the entry of pivot row `q` in the column
/// of `S_p`, `border[q]` its entry in the all-ones border column, and `bb[k]` the bordered
/// determinant `det [[M_S, 1], [1ᵀ, 0]]`. The KKT value of `S` is `−det M_S / bb`.
struct Walk<'a, E> {
    scaled: &'a Scaled,
    m: &'a [E],
    support: [usize; COPOSITIVE_CAP],
    pivots: [E; COPOSITIVE_CAP],
    rows: [[E; COPOSITIVE_CAP]; COPOSITIVE_CAP],
    border: [E; COPOSITIVE_CAP],
    bb: [E; COPOSITIVE_CAP + 1],
    best: Option<Candidate>,
    seed: &'a Rational,
    /// The current bound as `(numerator, positive denominator)`, when it fits.
    bound: Option<(E, E)>,
}

impl<'a, E: Word> Walk<'a, E> {
    fn new(scaled: &'a Scaled, m: &'a [E], seed: &'a Rational, best: Option<Candidate>) -> Self {
        let z = E::zero();
        let mut w = Walk {
            scaled,
            m,
            support: [0; COPOSITIVE_CAP],
            pivots: [z; COPOSITIVE_CAP],
            rows: [[z; COPOSITIVE_CAP]; COPOSITIVE_CAP],
            border: [z; COPOSITIVE_CAP],
            bb: [z; COPOSITIVE_CAP + 1],
            best,
            seed,
            bound: None,
        };
        w.refresh_bound();
        w
    }

    fn refresh_bound(&mut self) {
        let b = current(&self.best, self.seed);
        self.bound = E::from(b.numer().clone()).zip(E::from(b.denom().clone()));
    }

    /// Puts index `j` at depth `k`. Needs `pivots[..k]` nonzero.
    fn extend(&mut self, k: usize, j: usize) -> Option<()> {
        let n = self.scaled.n;
        let prev = |piv: &[E; COPOSITIVE_CAP], q: usize| if q == 0 { E::one() } else { piv[q - 1] };
        for p in 0..k {
            let mut v = self.m[self.support[p] * n + j];
            for q in 0..p {
                let t = v
                    .checked_mul(&self.pivots[q])?
                    .checked_sub(&self.rows[q][p].checked_mul(&self.rows[q][k])?)?;
                v = t / prev(&self.pivots, q);
            }
            self.rows[p][k] = v;
        }
        let mut diag = self.m[j * n + j];
        let mut bj = E::one();
        for q in 0..k {
            let c = self.rows[q][k];
            let d = self.pivots[q];
            let e = prev(&self.pivots, q);
            diag = diag.checked_mul(&d)?.checked_sub(&c.checked_mul(&c)?)? / e;
            bj = bj.checked_mul(&d)?.checked_sub(&c.checked_mul(&self.border[q])?)? / e;
        }
        self.bb[k + 1] = self.bb[k]
            .checked_mul(&diag)?
            .checked_sub(&bj.checked_mul(&bj)?)?
            / prev(&self.pivots, k);
        self.support[k] = j;
        self.pivots[k] = diag;
        self.border[k] = bj;
        Some(())
    }

    /// Whether `−det / bb` lies strictly below the current bound.
    fn below(&self, det: E, bb: E) -> bool {
        let exact = self.bound.and_then(|(bn, bd)| {
            let lhs = E::zero().checked_sub(&det)?.checked_mul(&bd)?;
            let rhs = bn.checked_mul(&bb)?;
            Some(if bb.is_positive() { lhs < rhs } else { lhs > rhs })
        });
        exact.unwrap_or_else(|| {
            let big = |v: E| BigInt::from(num_traits::ToPrimitive::to_i128(&v).expect("word fits i128"));
            let lambda = Rational::new(-big(det), big(bb));
            &lambda < current(&self.best, self.seed)
        })
    }

    fn consider(&mut self, mask: u32) {
        let bound = current(&self.best, self.seed).clone();
        if let Some(c) = best_in(self.scaled, std::iter::once(mask), Some(&bound)) {
            self.best = Some(c);
            self.refresh_bound();
        }
    }

    fn slow(&mut self, mask: u32, last: usize) {
        descend_slowly(self.scaled, mask, last, false, &mut self.best, self.seed);
        self.refresh_bound();
    }

    /// Visits every proper extension of the first `k` indices.
    fn visit(&mut self, k: usize, mask: u32) -> std::result::Result<(), Overflow> {
        for j in self.support[k - 1] + 1..self.scaled.n {
            self.extend(k, j).ok_or(Overflow)?;
            let child = mask | 1 << j;
            let (det, bb) = (self.pivots[k], self.bb[k + 1]);
            if !bb.is_zero() && self.below(det, bb) {
                self.consider(child);
            }
            if det.is_zero() {
                self.slow(child, j);
            } else {
                self.visit(k + 1, child)?;
            }
        }
        Ok(())
    }

    /// All supports strictly containing the pair `{i, j}`.
    fn run(&mut self, i: usize, j: usize) -> std::result::Result<(), Overflow> {
        let mask = 1u32 << i | 1 << j;
        self.extend(0, i).ok_or(Overflow)?;
        if self.pivots[0].is_zero() {
            self.slow(mask, j);
            return Ok(());
        }
        self.extend(1, j).ok_or(Overflow)?;
        if self.pivots[1].is_zero() {
            self.slow(mask, j);
            return Ok(());
        }
        self.visit(2, mask)
    }
}

fn current<'a>(best: &'a Option<Candidate>, seed: &'a Rational) -> &'a Rational {
    best.as_ref().map_or(seed, |b| &b.0)
}

/// Best candidate strictly containing `{i, j}`, walking in `i64`, then `i128`, then per
/// support.
fn pair_task(scaled: &Scaled, i: usize, j: usize, seed: &Rational) -> Option<Candidate> {
    let mut best = None;
    if let Some(m) = &scaled.word {
        let mut w = Walk::new(scaled, m, seed, best);
        if w.run(i, j).is_ok() {
            return w.best;
        }
        best = w.best;
    }
    if let Some(m) = &scaled.small {
        let mut w = Walk::new(scaled, m, seed, best);
        if w.run(i, j).is_ok() {
            return w.best;
        }
        best = w.best;
    }
    descend_slowly(scaled, 1 << i | 1 << j, j, false, &mut best, seed);
    best
}

/// Per-support fallback over the extensions of `mask` by indices above `last`.
fn descend_slowly(
    scaled: &Scaled,
    mask: u32,
    last: usize,
    include_self: bool,
    best: &mut Option<Candidate>,
    seed: &Rational,
) {
    let free = scaled.n - last - 1;
    let first = if include_self { 0 } else { 1 };
    let masks = (first..1u32 << free).map(|s| mask | s << (last + 1));
    let bound = current(best, seed).clone();
    if let Some(c) = best_in(scaled, masks, Some(&bound)) {
        *best = Some(c);
    }
}

/// Exact minimum of `xᵀMx` over `{x ≥ 0, Σx = 1}` together with a minimizer.
pub fn min_simplex_quadratic(m: &Matrix<Rational>) -> Result<SimplexMinimum> {
    let n = m.dim();
    if n == 0 {
        return Err(Error::InvalidArgument("empty matrix".into()));
    }
    if n > COPOSITIVE_CAP {
        return Err(Error::CapExceeded {
            what: "copositivity dimension",
            cap: COPOSITIVE_CAP as u64,
            got: n as u64,
        });
    }
    if let Some((i, j)) = m.asymmetry() {
        return Err(Error::InvalidArgument(format!(
            "matrix is not symmetric at ({i}, {j})"
        )));
    }
    let (big, den) = clear_denominators(m.as_slice());
    let small = big
        .iter()
        .map(i128::try_from)
        .collect::<std::result::Result<Vec<_>, _>>()
        .ok();
    let word = big
        .iter()
        .map(i64::try_from)
        .collect::<std::result::Result<Vec<_>, _>>()
        .ok();
    let scaled = Scaled { n, word, small, big };

    // supports of size ≤ 2 first, to give every later task a good bound
    let total: u32 = 1 << n;
    let seed = best_in(&scaled, (1..total).filter(|m| m.count_ones() <= 2), None)
        .expect("singleton supports always give candidates");
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let (value, mask, x) = pairs
        .par_iter()
        .filter_map(|&(i, j)| pair_task(&scaled, i, j, &seed.0))
        .chain(rayon::iter::once(seed.clone()))
        .reduce_with(|a, b| if (&b.0, b.1) < (&a.0, a.1) { b } else { a })
        .expect("seed is present");

    let mut argmin = vec![Rational::zero(); n];
    for (slot, xi) in support_of(mask, n).into_iter().zip(x) {
        argmin[slot] = xi;
    }
    Ok(SimplexMinimum {
        value: value / Rational::from_integer(den),
        argmin,
    })
}
