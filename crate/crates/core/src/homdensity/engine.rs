//! Weighted homomorphism sums `Σ_φ Π_v w_v(φ(v)) Π_{uv∈E} A[φ(u), φ(v)]` over all maps
//! `φ: V(H) → blocks`, by direct enumeration or by variable elimination.

use rayon::prelude::*;

use crate::scalar::Ring;

/// Input to the homomorphism sum. `matrix` is row-major `blocks × blocks`; `weights`
/// holds one vector of length `blocks` per vertex.
#[derive(Clone, Copy, Debug)]
pub struct HomSum<'a, R> {
    pub vertex_count: usize,
    pub edges: &'a [(usize, usize)],
    pub blocks: usize,
    pub matrix: &'a [R],
    pub weights: &'a [Vec<R>],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Enumerate every map.
    BruteForce,
    /// Greedy min-degree vertex elimination.
    Elimination,
}

pub fn hom_sum<R: Ring>(problem: &HomSum<'_, R>, method: Method) -> R {
    match method {
        Method::BruteForce => brute_force(problem),
        Method::Elimination => eliminate(problem),
    }
}

const PARALLEL_TERMS: f64 = 2e5;

fn brute_force<R: Ring>(p: &HomSum<'_, R>) -> R {
    let v = p.vertex_count;
    if v == 0 {
        return R::one();
    }
    // earlier[k] lists the neighbours of k with smaller index
    let mut earlier = vec![Vec::new(); v];
    for &(a, b) in p.edges {
        earlier[a.max(b)].push(a.min(b));
    }
    let terms = (p.blocks as f64).powi(v as i32);
    let run_from = |first: usize| {
        let mut phi = vec![0; v];
        phi[0] = first;
        let start = p.weights[0][first].clone();
        if start.is_zero() {
            return R::zero();
        }
        let mut total = R::zero();
        descend(p, &earlier, 1, &mut phi, start, &mut total);
        total
    };
    if terms >= PARALLEL_TERMS {
        (0..p.blocks)
            .into_par_iter()
            .map(run_from)
            .collect::<Vec<_>>()
            .into_iter()
            .fold(R::zero(), |mut acc, x| {
                acc.add_assign_ref(&x);
                acc
            })
    } else {
        let mut total = R::zero();
        for first in 0..p.blocks {
            total.add_assign_ref(&run_from(first));
        }
        total
    }
}

fn descend<R: Ring>(
    p: &HomSum<'_, R>,
    earlier: &[Vec<usize>],
    k: usize,
    phi: &mut Vec<usize>,
    partial: R,
    total: &mut R,
) {
    if k == p.vertex_count {
        total.add_assign_ref(&partial);
        return;
    }
    for b in 0..p.blocks {
        let w = &p.weights[k][b];
        if w.is_zero() {
            continue;
        }
        let mut prod = partial.mul_ref(w);
        for &u in &earlier[k] {
            prod = prod.mul_ref(&p.matrix[phi[u] * p.blocks + b]);
        }
        if prod.is_zero() {
            continue;
        }
        phi[k] = b;
        descend(p, earlier, k + 1, phi, prod, total);
    }
}

struct Factor<R> {
    scope: Vec<usize>,
    table: Vec<R>,
}

fn eliminate<R: Ring>(p: &HomSum<'_, R>) -> R {
    let n = p.blocks;
    let v = p.vertex_count;
    let mut factors: Vec<Factor<R>> = Vec::with_capacity(v + p.edges.len());
    for (vertex, w) in p.weights.iter().enumerate().take(v) {
        factors.push(Factor {
            scope: vec![vertex],
            table: w.clone(),
        });
    }
    for &(a, b) in p.edges {
        let (lo, hi) = (a.min(b), a.max(b));
        factors.push(Factor {
            scope: vec![lo, hi],
            table: p.matrix.to_vec(),
        });
    }

    let mut interaction = vec![std::collections::BTreeSet::new(); v];
    for &(a, b) in p.edges {
        interaction[a].insert(b);
        interaction[b].insert(a);
    }
    let mut alive = vec![true; v];

    for _ in 0..v {
        let next = (0..v)
            .filter(|&x| alive[x])
            .min_by_key(|&x| (interaction[x].len(), x))
            .expect("a vertex remains");
        alive[next] = false;
        let nbrs: Vec<usize> = interaction[next].iter().copied().collect();
        for &a in &nbrs {
            interaction[a].remove(&next);
            for &b in &nbrs {
                if a != b {
                    interaction[a].insert(b);
                }
            }
        }
        interaction[next].clear();

        let (touching, rest): (Vec<_>, Vec<_>) =
            factors.into_iter().partition(|f| f.scope.contains(&next));
        factors = rest;
        factors.push(sum_out(touching, next, n));
    }

    let mut result = R::one();
    for f in &factors {
        debug_assert!(f.scope.is_empty());
        result = result.mul_ref(&f.table[0]);
    }
    result
}

/// Multiplies the factors together and sums out `var`.
fn sum_out<R: Ring>(factors: Vec<Factor<R>>, var: usize, n: usize) -> Factor<R> {
    let mut scope: Vec<usize> = factors
        .iter()
        .flat_map(|f| f.scope.iter().copied())
        .filter(|&x| x != var)
        .collect();
    scope.sort_unstable();
    scope.dedup();

    // strides[f][pos] = stride of scope variable `pos` in factor f (0 if absent);
    // var_strides[f] = stride of the summed variable in factor f
    let strides: Vec<Vec<usize>> = factors
        .iter()
        .map(|f| scope.iter().map(|&x| stride_of(&f.scope, x, n)).collect())
        .collect();
    let var_strides: Vec<usize> = factors.iter().map(|f| stride_of(&f.scope, var, n)).collect();

    let size = n.pow(scope.len() as u32);
    let mut table = Vec::with_capacity(size);
    let mut digits = vec![0usize; scope.len()];
    let mut base = vec![0usize; factors.len()];
    for _ in 0..size {
        let mut acc = R::zero();
        'blocks: for b in 0..n {
            let mut prod: Option<R> = None;
            for (fi, f) in factors.iter().enumerate() {
                let value = &f.table[base[fi] + b * var_strides[fi]];
                if value.is_zero() {
                    continue 'blocks;
                }
                prod = Some(match prod {
                    None => value.clone(),
                    Some(acc) => acc.mul_ref(value),
                });
            }
            acc.add_assign_ref(&prod.unwrap_or_else(R::one));
        }
        table.push(acc);
        // odometer increment over the scope, last position fastest
        for pos in (0..scope.len()).rev() {
            digits[pos] += 1;
            for (fi, s) in strides.iter().enumerate() {
                base[fi] += s[pos];
            }
            if digits[pos] < n {
                break;
            }
            digits[pos] = 0;
            for (fi, s) in strides.iter().enumerate() {
                base[fi] -= s[pos] * n;
            }
        }
    }
    Factor { scope, table }
}

fn stride_of(scope: &[usize], x: usize, n: usize) -> usize {
    match scope.iter().position(|&y| y == x) {
        Some(i) => n.pow((scope.len() - 1 - i) as u32),
        None => 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn both_methods_agree_on_integers() {
        // 3 blocks, triangle plus pendant edge, mixed-sign integer matrix
        let matrix: Vec<BigInt> = [2, -1, 3, -1, 0, 4, 3, 4, -2].iter().map(|&x| BigInt::from(x)).collect();
        let weights: Vec<Vec<BigInt>> = (0..4)
            .map(|v| (0..3).map(|b| BigInt::from(1 + (v + b) as i64 % 3)).collect())
            .collect();
        let edges = [(0, 1), (1, 2), (0, 2), (2, 3)];
        let problem = HomSum {
            vertex_count: 4,
            edges: &edges,
            blocks: 3,
            matrix: &matrix,
            weights: &weights,
        };
        assert_eq!(
            hom_sum(&problem, Method::BruteForce),
            hom_sum(&problem, Method::Elimination)
        );
    }

    #[test]
    fn empty_graph_is_product_of_weight_sums() {
        let matrix = vec![1.0, 0.0, 0.0, 1.0];
        let weights = vec![vec![0.25, 0.75], vec![2.0, 3.0]];
        let problem = HomSum {
            vertex_count: 2,
            edges: &[],
            blocks: 2,
            matrix: &matrix,
            weights: &weights,
        };
        assert_eq!(hom_sum(&problem, Method::Elimination), 5.0);
        assert_eq!(hom_sum(&problem, Method::BruteForce), 5.0);
    }
}
