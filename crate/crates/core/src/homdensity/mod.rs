//! Homomorphism densities of graphs in step kernels, exact when the scalar is.
//!
//! All densities reduce to one weighted sum over maps `V(H) → blocks`: free vertices
//! carry the block measures, fixed vertices an indicator, weighted vertices `μ·w`.

pub mod engine;


use crate::error::{Error, Result};
use crate::graphs::{spanning_subgraphs, Graph};
use crate::kernels::{BlockFunction, StepKernel};
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use engine::{HomSum, Method};

/// Largest number of maps the brute-force [`density`] will enumerate.
pub const BRUTE_FORCE_TERM_CAP: u64 = 1_000_000_000;

fn hom_sum<T: Scalar>(graph: &Graph, kernel: &StepKernel<T>, weights: &[Vec<T>], method: Method) -> T {
    T::hom_sum(
        &HomSum {
            vertex_count: graph.vertex_count(),
            edges: graph.edges(),
            blocks: kernel.blocks(),
            matrix: kernel.matrix().as_slice(),
            weights,
        },
        method,
    )
}

fn measure_weights<T: Scalar>(graph: &Graph, kernel: &StepKernel<T>) -> Vec<Vec<T>> {
    vec![kernel.measures().to_vec(); graph.vertex_count()]
}

/// `t(H, W)` by enumerating all `n^{v(H)}` maps.
pub fn density<T: Scalar>(graph: &Graph, kernel: &StepKernel<T>) -> Result<T> {
    let terms = (kernel.blocks() as u128).checked_pow(graph.vertex_count() as u32);
    match terms {
        Some(t) if t <= BRUTE_FORCE_TERM_CAP as u128 => {}
        _ => {
            return Err(Error::CapExceeded {
                what: "brute-force density terms",
                cap: BRUTE_FORCE_TERM_CAP,
                got: terms.map_or(u64::MAX, |t| t.min(u64::MAX as u128) as u64),
            })
        }
    }
    Ok(hom_sum(graph, kernel, &measure_weights(graph, kernel), Method::BruteForce))
}

/// `t(H, W)` by vertex elimination; equal to [`density`] but far cheaper on sparse `H`.
pub fn density_dp<T: Scalar>(graph: &Graph, kernel: &StepKernel<T>) -> T {
    hom_sum(graph, kernel, &measure_weights(graph, kernel), Method::Elimination)
}

/// Vertices of `H` pinned to blocks of `W`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assignment {
    pairs: Vec<(usize, usize)>,
}

impl Assignment {
    pub fn new(pairs: Vec<(usize, usize)>) -> Self {
        Self { pairs }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn validate(&self, graph: &Graph, blocks: usize) -> Result<()> {
        let mut seen = vec![false; graph.vertex_count()];
        for &(v, b) in &self.pairs {
            if v >= graph.vertex_count() {
                return Err(Error::InvalidArgument(format!("vertex {v} not in the graph")));
            }
            if b >= blocks {
                return Err(Error::InvalidArgument(format!("block {b} not in the kernel")));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidArgument(format!("vertex {v} fixed twice")));
            }
        }
        Ok(())
    }
}

/// `t(H, W | x_v = z, …)`: the pinned vertices contribute no measure factor.
pub fn conditioned_density<T: Scalar>(
    graph: &Graph,
    kernel: &StepKernel<T>,
    fix: &Assignment,
) -> Result<T> {
    fix.validate(graph, kernel.blocks())?;
    let mut weights = measure_weights(graph, kernel);
    for &(v, b) in fix.pairs() {
        weights[v] = BlockFunction::<T>::indicator(kernel.blocks(), &[b]).into_values();
    }
    Ok(hom_sum(graph, kernel, &weights, Method::Elimination))
}

/// `∫ Π_v w(x_v) Π_{uv} W(x_u, x_v) dμ` for a nonnegative weight function `w`.
pub fn weighted_density<T: Scalar>(
    graph: &Graph,
    kernel: &StepKernel<T>,
    w: &BlockFunction<T>,
) -> Result<T> {
    if w.len() != kernel.blocks() {
        return Err(Error::DimensionMismatch {
            expected: kernel.blocks(),
            found: w.len(),
        });
    }
    if !w.is_nonnegative() {
        return Err(Error::InvalidArgument("weight function must be nonnegative".into()));
    }
    let weighted: Vec<T> = kernel
        .measures()
        .iter()
        .zip(w.values())
        .map(|(m, x)| m.mul_ref(x))
        .collect();
    let weights = vec![weighted; graph.vertex_count()];
    Ok(hom_sum(graph, kernel, &weights, Method::Elimination))
}

/// The kernel `(i, j) ↦ t(H, W | x_a = i, x_b = j)`.
///
/// Fails if the result is not symmetric; no symmetrization is attempted.
pub fn rooted_density_kernel<T: Scalar>(
    graph: &Graph,
    a: usize,
    b: usize,
    kernel: &StepKernel<T>,
) -> Result<StepKernel<T>> {
    if a == b {
        return Err(Error::InvalidArgument("roots must be distinct".into()));
    }
    let n = kernel.blocks();
    let mut rows = vec![vec![T::zero(); n]; n];
    for (i, row) in rows.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = conditioned_density(graph, kernel, &Assignment::new(vec![(a, i), (b, j)]))?;
        }
    }
    let matrix = Matrix::from_rows(rows)?;
    if let Some((i, j)) = matrix.asymmetry() {
        return Err(Error::AsymmetricRootedKernel(i, j));
    }
    StepKernel::new(kernel.measures().to_vec(), matrix)
}

/// `trace((D A)^k)` with `D = diag(μ)`, which is the sum of the `k`-th powers of the
/// kernel's eigenvalues and equals `t(C_k, W)` for `k ≥ 3`. For `k = 2` it is
/// `Σ μ_i μ_j A[i, j]²`.
pub fn cycle_density_spectral_exact<T: Scalar>(k: usize, kernel: &StepKernel<T>) -> Result<T> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("cycle length must be at least 2, got {k}")));
    }
    let n = kernel.blocks();
    let da = Matrix::from_fn(n, |i, j| kernel.measures()[i].mul_ref(kernel.entry(i, j)));
    let mut power = da.clone();
    for _ in 1..k {
        power = power.matmul(&da);
    }
    Ok(power.trace())
}

/// One term `p^{e(H) - e(H')} t(H', W₀)` of the expansion of `t(H, W₀ + p)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpansionTerm<T> {
    pub subgraph: Graph,
    pub coefficient: T,
    pub density: T,
}

impl<T: Scalar> ExpansionTerm<T> {
    pub fn value(&self) -> T {
        self.coefficient.mul_ref(&self.density)
    }
}

/// Expands `t(H, W₀ + p)` over all spanning subgraphs `H'` of `H`.
pub fn psd_expansion<T: Scalar>(
    graph: &Graph,
    p: &T,
    base: &StepKernel<T>,
) -> Result<Vec<ExpansionTerm<T>>> {
    let e = graph.edge_count();
    let mut powers = vec![T::one()];
    for i in 0..e {
        let next = powers[i].mul_ref(p);
        powers.push(next);
    }
    Ok(spanning_subgraphs(graph)?
        .map(|sub| {
            let density = density_dp(&sub, base);
            ExpansionTerm {
                coefficient: powers[e - sub.edge_count()].clone(),
                density,
                subgraph: sub,
            }
        })
        .collect())
}

/// Sum of the expansion terms.
pub fn expansion_total<T: Scalar>(terms: &[ExpansionTerm<T>]) -> T {
    let mut total = T::zero();
    for t in terms {
        total.add_assign_ref(&t.value());
    }
    total
}
