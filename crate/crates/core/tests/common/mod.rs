//! Strategies and brute-force oracles shared by the property tests.
#![allow(dead_code)]

use knrs_core::scalar::{int, ratio};
use knrs_core::{Graph, Kernel, Matrix, Rational};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn normalize(weights: Vec<i64>) -> Vec<Rational> {
    let total: i64 = weights.iter().sum();
    weights.into_iter().map(|w| ratio(w, total)).collect()
}

pub fn measures(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(1i64..=4, n).prop_map(normalize)
}

fn symmetric(n: usize, upper: Vec<Rational>) -> Matrix<Rational> {
    let mut m = Matrix::zeros(n);
    let mut it = upper.into_iter();
    for i in 0..n {
        for j in i..n {
            let v = it.next().expect("enough entries");
            m[(i, j)] = v.clone();
            m[(j, i)] = v;
        }
    }
    m
}

/// Symmetric kernels with small signed entries on `n ≤ max_n` blocks.
pub fn kernel(max_n: usize) -> impl Strategy<Value = Kernel> {
    (1..=max_n).prop_flat_map(|n| {
        (
            measures(n),
            prop::collection::vec(-4i64..=4, n * (n + 1) / 2),
            1i64..=3,
        )
            .prop_map(move |(mu, raw, den)| {
                let upper = raw.into_iter().map(|v| ratio(v, den)).collect();
                Kernel::new(mu, symmetric(n, upper)).expect("valid kernel")
            })
    })
}

/// Graphons: entries in `[0, 1]` with denominator up to 4.
pub fn graphon(max_n: usize) -> impl Strategy<Value = Kernel> {
    (1..=max_n).prop_flat_map(|n| {
        (measures(n), prop::collection::vec(0i64..=4, n * (n + 1) / 2))
            .prop_map(move |(mu, raw)| {
                let upper = raw.into_iter().map(|v| ratio(v, 4)).collect();
                Kernel::new(mu, symmetric(n, upper)).expect("valid graphon")
            })
    })
}

/// A second kernel on the given measures.
pub fn kernel_on(mu: Vec<Rational>) -> impl Strategy<Value = Kernel> {
    let n = mu.len();
    prop::collection::vec(-4i64..=4, n * (n + 1) / 2).prop_map(move |raw| {
        let upper = raw.into_iter().map(int).collect();
        Kernel::new(mu.clone(), symmetric(n, upper)).expect("valid kernel")
    })
}

/// Graphs on `1..=max_v` vertices with a random edge set.
pub fn graph(max_v: usize) -> impl Strategy<Value = Graph> {
    (1..=max_v).prop_flat_map(|v| {
        let pairs: Vec<(usize, usize)> =
            (0..v).flat_map(|i| (i + 1..v).map(move |j| (i, j))).collect();
        prop::collection::vec(any::<bool>(), pairs.len()).prop_map(move |keep| {
            let edges = pairs.iter().zip(keep).filter(|(_, k)| *k).map(|(e, _)| *e);
            Graph::new(v, edges).expect("simple graph")
        })
    })
}

/// `Σ_φ Π_v μ_{φ(v)} Π_{uv} A[φ(u), φ(v)]` over all maps, with optional per-vertex
/// weights replacing `μ`.
pub fn brute_density(g: &Graph, w: &Kernel, weights: Option<&[Vec<Rational>]>) -> Rational {
    let n = w.blocks();
    let v = g.vertex_count();
    let mut total = Rational::zero();
    let mut phi = vec![0usize; v];
    loop {
        let mut term = Rational::one();
        for (x, &b) in phi.iter().enumerate() {
            term *= match weights {
                Some(ws) => ws[x][b].clone(),
                None => w.measures()[b].clone(),
            };
        }
        for &(a, b) in g.edges() {
            term *= w.entry(phi[a], phi[b]).clone();
        }
        total += term;
        let mut i = 0;
        loop {
            if i == v {
                return total;
            }
            phi[i] += 1;
            if phi[i] < n {
                break;
            }
            phi[i] = 0;
            i += 1;
        }
    }
}

pub fn det(m: &Matrix<Rational>) -> Rational {
    let n = m.dim();
    let mut a: Vec<Vec<Rational>> = m.rows().map(|r| r.to_vec()).collect();
    let mut d = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= a[c][c].clone();
        for r in c + 1..n {
            let f = a[r][c].clone() / a[c][c].clone();
            let (top, bottom) = a.split_at_mut(r);
            for (x, y) in bottom[0][c..].iter_mut().zip(&top[c][c..]) {
                *x -= f.clone() * y.clone();
            }
        }
    }
    d
}

pub fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (1u32..1 << n).map(move |m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
}

/// PSD iff every principal minor is nonnegative.
pub fn psd_by_minors(m: &Matrix<Rational>) -> bool {
    subsets(m.dim()).all(|s| det(&m.principal(&s)) >= Rational::zero())
}

/// Minimum of `xᵀMx` on the simplex by solving every face's KKT system.
pub fn simplex_min_oracle(m: &Matrix<Rational>) -> Rational {
    let mut best: Option<Rational> = None;
    for s in subsets(m.dim()) {
        let k = s.len();
        // [[M_S, -1], [1ᵀ, 0]] (x, λ) = (0, 1)
        let sys = Matrix::from_fn(k + 1, |i, j| match (i < k, j < k) {
            (true, true) => m[(s[i], s[j])].clone(),
            (true, false) => -Rational::one(),
            (false, true) => Rational::one(),
            (false, false) => Rational::zero(),
        });
        let mut rhs = vec![Rational::zero(); k + 1];
        rhs[k] = Rational::one();
        // Cramer's rule; the systems are tiny
        let d = det(&sys);
        if d.is_zero() {
            continue;
        }
        let x: Vec<Rational> = (0..=k)
            .map(|col| {
                let replaced =
                    Matrix::from_fn(k + 1, |i, j| if j == col { rhs[i].clone() } else { sys[(i, j)].clone() });
                det(&replaced) / d.clone()
            })
            .collect();
        if x[..k].iter().any(|v| v < &Rational::zero()) {
            continue;
        }
        let lambda = x[k].clone();
        if best.as_ref().is_none_or(|b| &lambda < b) {
            best = Some(lambda);
        }
    }
    best.expect("vertices always give a candidate")
}
