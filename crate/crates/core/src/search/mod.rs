//! Random kernel generators, exhaustive graph sweeps, and a seeded local search for PSD
//! 0-regular kernels in which a given graph has negative density, with exact
//! certification of anything it finds.
//!
//! Every randomized unit (restart, generated instance) draws from a ChaCha8 stream seeded
//! with `seed ^ unit`, so results do not depend on scheduling.

mod generators;
mod sweep;

pub use generators::{
    center_rows, gen_locally_dense, gen_psd_zero_regular, gen_regular_graphon, random_measures,
    random_psd, random_psd_on, random_symmetric, random_symmetric_on, uniform_measures,
};
pub use sweep::{sweep_candidates, sweep_graphs, SWEEP_VERTEX_CAP};

use num_traits::{Signed, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cones::is_psd;
use crate::error::{Error, Result};
use crate::graphs::{Graph, GraphJson};
use crate::homdensity::density_dp;
use crate::kernels::{KernelJson, StepKernel};
use crate::matrix::Matrix;
use crate::scalar::{approximate, format_rational, parse_rational, Rational};
use crate::Kernel;

/// Largest block count for [`minimize_density`].
pub const SEARCH_BLOCK_CAP: usize = 8;
/// Largest graph for [`minimize_density`].
pub const SEARCH_VERTEX_CAP: usize = 7;
/// Denominator bound when rounding a float factor for certification.
pub const ROUNDING_DENOMINATOR: u64 = 10_000;
/// Number of step-size halvings before a restart stops.
pub const SCALES: usize = 10;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub graph: GraphJson,
    /// Base seed; restart `r` uses `seed ^ r`.
    pub seed: u64,
    pub steps: usize,
    pub restarts_used: usize,
    pub best_restart: usize,
    /// `t(H, W) / (∫W(x,x))^{e(H)}` for the best factor.
    pub best_objective: f64,
    pub measures: Vec<String>,
    /// `L`, with `W = P·L·Lᵀ·Pᵀ`.
    pub factor: Vec<Vec<f64>>,
    /// When present, certification uses this kernel instead of rebuilding from `factor`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kernel: Option<KernelJson>,
    pub certified: bool,
    pub certified_value: Option<String>,
}

impl SearchReport {
    /// A report that skips the search and carries a kernel to certify directly.
    pub fn for_kernel(graph: &Graph, kernel: &Kernel) -> Self {
        Self {
            graph: GraphJson::from_graph(graph),
            seed: 0,
            steps: 0,
            restarts_used: 0,
            best_restart: 0,
            best_objective: density_dp(graph, &kernel.to_f64()),
            measures: kernel.measures().iter().map(format_rational).collect(),
            factor: Vec::new(),
            kernel: Some(KernelJson::from_kernel(kernel)),
            certified: false,
            certified_value: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// `P·L·Lᵀ·Pᵀ` in floating point, symmetric by construction.
fn factor_kernel(factor: &[f64], n: usize, measures: &[f64]) -> StepKernel<f64> {
    let mut centered = factor.to_vec();
    for c in 0..n {
        let mean: f64 = (0..n).map(|r| measures[r] * factor[r * n + c]).sum();
        for r in 0..n {
            centered[r * n + c] -= mean;
        }
    }
    let mut a = Matrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            let v: f64 = (0..n).map(|k| centered[i * n + k] * centered[j * n + k]).sum();
            a[(i, j)] = v;
            a[(j, i)] = v;
        }
    }
    StepKernel::new(measures.to_vec(), a).expect("centered Gram matrix is a valid kernel")
}

fn objective(graph: &Graph, factor: &[f64], n: usize, measures: &[f64]) -> f64 {
    let kernel = factor_kernel(factor, n, measures);
    let trace: f64 = (0..n).map(|i| measures[i] * kernel.entry(i, i)).sum();
    if trace <= f64::MIN_POSITIVE {
        return 0.0;
    }
    density_dp(graph, &kernel) / trace.powi(graph.edge_count() as i32)
}

struct RunResult {
    value: f64,
    factor: Vec<f64>,
}

fn local_search(graph: &Graph, n: usize, measures: &[f64], steps: usize, seed: u64) -> RunResult {
    let mut rng = generators::rng_for(seed);
    let mut factor: Vec<f64> = (0..n * n).map(|_| rng.gen_range(-1.0..=1.0)).collect();
    let mut value = objective(graph, &factor, n, measures);
    let mut step = 0.5;
    let mut scales = 0;
    let mut failures = 0;
    let patience = n * n;
    for _ in 1..steps {
        let k = rng.gen_range(0..n * n);
        let delta = if rng.gen::<bool>() { step } else { -step };
        let old = factor[k];
        factor[k] = old + delta;
        let candidate = objective(graph, &factor, n, measures);
        if candidate < value {
            value = candidate;
            failures = 0;
        } else {
            factor[k] = old;
            failures += 1;
            if failures >= patience {
                failures = 0;
                step *= 0.5;
                scales += 1;
                if scales >= SCALES {
                    break;
                }
            }
        }
    }
    RunResult { value, factor }
}

/// Searches `W = P·L·Lᵀ·Pᵀ` on `n` uniform blocks for small normalized `t(H, W)`.
pub fn minimize_density(
    graph: &Graph,
    n: usize,
    restarts: usize,
    steps: usize,
    seed: u64,
) -> Result<SearchReport> {
    minimize_density_on(graph, &uniform_measures(n), restarts, steps, seed)
}

/// [`minimize_density`] on given block measures.
pub fn minimize_density_on(
    graph: &Graph,
    measures: &[Rational],
    restarts: usize,
    steps: usize,
    seed: u64,
) -> Result<SearchReport> {
    let n = measures.len();
    if n == 0 || n > SEARCH_BLOCK_CAP {
        return Err(Error::CapExceeded {
            what: "search blocks",
            cap: SEARCH_BLOCK_CAP as u64,
            got: n as u64,
        });
    }
    if graph.vertex_count() > SEARCH_VERTEX_CAP {
        return Err(Error::CapExceeded {
            what: "search graph vertices",
            cap: SEARCH_VERTEX_CAP as u64,
            got: graph.vertex_count() as u64,
        });
    }
    if restarts == 0 || steps == 0 {
        return Err(Error::InvalidArgument("restarts and steps must be positive".into()));
    }
    // validates the measures
    StepKernel::constant_on(measures.to_vec(), Rational::zero())?;
    let mu: Vec<f64> = measures.iter().map(crate::scalar::Scalar::to_f64).collect();

    let (best_restart, best) = (0..restarts)
        .into_par_iter()
        .map(|r| (r, local_search(graph, n, &mu, steps, seed ^ r as u64)))
        .reduce_with(|a, b| {
            if b.1.value.total_cmp(&a.1.value).then(b.0.cmp(&a.0)).is_lt() {
                b
            } else {
                a
            }
        })
        .expect("at least one restart");

    Ok(SearchReport {
        graph: GraphJson::from_graph(graph),
        seed,
        steps,
        restarts_used: restarts,
        best_restart,
        best_objective: best.value,
        measures: measures.iter().map(format_rational).collect(),
        factor: best.factor.chunks(n).map(<[f64]>::to_vec).collect(),
        kernel: None,
        certified: false,
        certified_value: None,
    })
}

/// The exact PSD 0-regular kernel `P·L̃·L̃ᵀ·Pᵀ` for the rounded factor `L̃`.
pub fn rebuild_kernel(report: &SearchReport) -> Result<Kernel> {
    let measures = report
        .measures
        .iter()
        .map(|m| parse_rational(m))
        .collect::<Result<Vec<_>>>()?;
    let n = measures.len();
    if report.factor.len() != n || report.factor.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: report.factor.len(),
        });
    }
    let rounded = report
        .factor
        .iter()
        .map(|row| {
            row.iter()
                .map(|&x| approximate(x, ROUNDING_DENOMINATOR))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let centered = center_rows(&rounded, &measures);
    let matrix = Matrix::from_fn(n, |i, j| {
        centered[i].iter().zip(&centered[j]).map(|(a, b)| a * b).sum()
    });
    StepKernel::new(measures, matrix)
}

/// Decides the report exactly: certified iff the kernel is PSD and 0-regular and the
/// graph has negative density in it.
pub fn certify_counterexample(report: &SearchReport) -> Result<SearchReport> {
    let graph = report.graph.to_graph()?;
    let kernel = match &report.kernel {
        Some(k) => k.to_kernel()?,
        None => rebuild_kernel(report)?,
    };
    let value = density_dp(&graph, &kernel);
    let valid = is_psd(&kernel).holds && kernel.is_regular(&Rational::zero());
    let mut out = report.clone();
    out.certified = valid && value.is_negative();
    out.certified_value = Some(format_rational(&value));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{cycle, h0, theta};
    use crate::kernels::counterexample_5x5;

    #[test]
    fn deterministic_reports() {
        let g = cycle(4).unwrap();
        let a = minimize_density(&g, 3, 4, 60, 11).unwrap();
        let b = minimize_density(&g, 3, 4, 60, 11).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(SearchReport::from_json(&a.to_json()).unwrap(), a);
        assert!(a.best_objective >= -1e-9);
        let c = minimize_density(&g, 3, 4, 60, 12).unwrap();
        assert_ne!(a.factor, c.factor);
    }

    #[test]
    fn theta_reports_never_certify() {
        let g = theta(&[1, 2, 1]).unwrap();
        let r = minimize_density(&g, 4, 3, 200, 0).unwrap();
        assert!(r.best_objective >= -1e-9);
        let c = certify_counterexample(&r).unwrap();
        assert!(!c.certified);
        assert!(!parse_rational(c.certified_value.as_ref().unwrap()).unwrap().is_negative());
    }

    #[test]
    fn zero_factor_rounds_to_zero_density() {
        let mut r = minimize_density(&h0(), 3, 1, 1, 0).unwrap();
        r.factor = vec![vec![0.0; 3]; 3];
        let c = certify_counterexample(&r).unwrap();
        assert!(!c.certified);
        assert_eq!(c.certified_value.as_deref(), Some("0"));
    }

    #[test]
    fn direct_certification_of_five_block_kernel() {
        let w = counterexample_5x5();
        let (g, t) = sweep_graphs(&w, 6).unwrap().swap_remove(0);
        let c = certify_counterexample(&SearchReport::for_kernel(&g, &w)).unwrap();
        assert!(c.certified);
        assert_eq!(c.certified_value, Some(format_rational(&t)));
        let back = SearchReport::from_json(&c.to_json()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn rebuilt_kernels_are_psd_and_zero_regular() {
        let r = minimize_density(&cycle(5).unwrap(), 4, 2, 30, 3).unwrap();
        let w = rebuild_kernel(&r).unwrap();
        assert!(is_psd(&w).holds);
        assert!(w.is_regular(&Rational::zero()));
    }
}
