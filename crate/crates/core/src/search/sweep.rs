use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graphs::{canonical_form, enumerate_classes, Graph};
use crate::homdensity::density_dp;
use crate::scalar::Rational;
use crate::Kernel;

/// Largest vertex count accepted by [`sweep_graphs`].
pub const SWEEP_VERTEX_CAP: usize = 7;

/// One representative per isomorphism class of connected graphs with minimum degree at
/// least 2 on `3..=max_vertices` vertices, in canonical order.
pub fn sweep_candidates(max_vertices: usize) -> Result<Vec<Graph>> {
    if max_vertices > SWEEP_VERTEX_CAP {
        return Err(Error::CapExceeded {
            what: "sweep vertex count",
            cap: SWEEP_VERTEX_CAP as u64,
            got: max_vertices as u64,
        });
    }
    let mut out = Vec::new();
    for v in 3..=max_vertices {
        out.extend(
            enumerate_classes(v)?
                .into_iter()
                .filter(|g| g.is_connected() && g.min_degree() >= 2),
        );
    }
    Ok(out)
}

/// Exact densities of all sweep candidates, ascending; ties broken by canonical form.
pub fn sweep_graphs(kernel: &Kernel, max_vertices: usize) -> Result<Vec<(Graph, Rational)>> {
    let graphs = sweep_candidates(max_vertices)?;
    let mut rows: Vec<(Rational, Vec<u8>, Graph)> = graphs
        .into_par_iter()
        .map(|g| {
            let t = density_dp(&g, kernel);
            let key = canonical_form(&g).expect("under the canonical cap");
            (t, key, g)
        })
        .collect();
    rows.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
    Ok(rows.into_iter().map(|(t, _, g)| (g, t)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::is_theta;
    use crate::kernels::{counterexample_5x5, StepKernel};
    use crate::scalar::{ratio, rational_pow};
    use crate::search::gen_psd_zero_regular;
    use crate::search::generators::uniform_measures;
    use num_traits::Signed;

    #[test]
    fn candidate_counts() {
        // connected graphs with minimum degree ≥ 2 on 3, 4, 5, 6 vertices
        let per_size: Vec<usize> = (3..=6)
            .map(|v| {
                enumerate_classes(v)
                    .unwrap()
                    .into_iter()
                    .filter(|g| g.is_connected() && g.min_degree() >= 2)
                    .count()
            })
            .collect();
        assert_eq!(per_size, vec![1, 3, 11, 61]);
        assert!(sweep_candidates(8).is_err());
    }

    #[test]
    fn constant_kernel_sweep() {
        let p = ratio(2, 5);
        let w = StepKernel::constant(p.clone()).unwrap();
        let rows = sweep_graphs(&w, 5).unwrap();
        assert_eq!(rows.len(), 15);
        for (g, t) in &rows {
            assert_eq!(t, &rational_pow(&p, g.edge_count()));
        }
        assert!(rows.windows(2).all(|w| w[0].1 <= w[1].1));
    }

    #[test]
    fn five_block_kernel_has_negative_six_vertex_graph() {
        let rows = sweep_graphs(&counterexample_5x5(), 6).unwrap();
        let (g, t) = &rows[0];
        assert!(t.is_negative());
        assert_eq!(g.vertex_count(), 6);
        assert!(!is_theta(g));
    }

    #[test]
    fn theta_graphs_nonnegative_in_sweep() {
        for seed in 0..5 {
            let w = gen_psd_zero_regular(4, &uniform_measures(4), seed).unwrap();
            for (g, t) in sweep_graphs(&w, 6).unwrap() {
                if is_theta(&g) {
                    assert!(!t.is_negative());
                }
            }
        }
    }
}
