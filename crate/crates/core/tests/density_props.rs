mod common;

use common::{brute_density, graph, graphon, kernel, kernel_on};
use knrs_core::graphs::{glue, path, subdivide, GlueSpec, Graph};
use knrs_core::homdensity::{
    conditioned_density, density, density_dp, weighted_density, Assignment,
};
use knrs_core::scalar::{int, ratio};
use knrs_core::search::{gen_psd_zero_regular, uniform_measures};
use knrs_core::{BlockFunction, Kernel, Matrix, Rational};
use num_traits::Zero;
use proptest::prelude::*;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config(128))]

    #[test]
    fn density_matches_brute_force(g in graph(5), w in kernel(3)) {
        let oracle = brute_density(&g, &w, None);
        prop_assert_eq!(density(&g, &w).unwrap(), oracle.clone());
        prop_assert_eq!(density_dp(&g, &w), oracle);
    }

    #[test]
    fn density_is_isomorphism_invariant(
        (g, w, vperm, bperm) in (graph(5), kernel(4)).prop_flat_map(|(g, w)| {
            let v = g.vertex_count();
            let n = w.blocks();
            (
                Just(g),
                Just(w),
                Just((0..v).collect::<Vec<_>>()).prop_shuffle(),
                Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
            )
        })
    ) {
        let base = density(&g, &w).unwrap();
        prop_assert_eq!(density(&g.permuted(&vperm).unwrap(), &w.permuted(&bperm).unwrap()).unwrap(), base);
    }

    #[test]
    fn tensor_multiplicativity(g in graph(4), a in kernel(2), b in kernel(3)) {
        let lhs = density_dp(&g, &a.tensor_product(&b));
        prop_assert_eq!(lhs, density_dp(&g, &a) * density_dp(&g, &b));
    }

    #[test]
    fn tensor_square_squares_the_density(g in graph(4), w in kernel(3)) {
        let t = density_dp(&g, &w);
        let sq = w.tensor_product(&w);
        prop_assert_eq!(density_dp(&g, &sq), &t * &t);
        if w.blocks() <= 2 {
            prop_assert_eq!(density_dp(&g, &sq.tensor_product(&sq)), &t * &t * &t * &t);
        }
    }

    #[test]
    fn subdivision_identity(g in graph(4), w in kernel(3), ell in 1usize..=3) {
        let lhs = density_dp(&subdivide(&g, ell).unwrap(), &w);
        prop_assert_eq!(lhs, density_dp(&g, &w.operator_power(ell + 1).unwrap()));
    }

    #[test]
    fn path_density_is_mass_of_power(w in graphon(4), ell in 1usize..=5) {
        prop_assert_eq!(density_dp(&path(ell), &w), w.operator_power(ell).unwrap().mass());
    }

    #[test]
    fn monotone_in_graphons(
        (g, w, bump) in (graph(5), graphon(3)).prop_flat_map(|(g, w)| {
            let n = w.blocks();
            (Just(g), Just(w), prop::collection::vec(0i64..=4, n * n))
        })
    ) {
        let n = w.blocks();
        let bigger = Matrix::from_fn(n, |i, j| {
            let (a, b) = (i.min(j), i.max(j));
            let raised = w.entry(i, j) + ratio(bump[a * n + b], 4);
            raised.min(int(1))
        });
        let bigger = Kernel::new(w.measures().to_vec(), bigger).unwrap();
        prop_assert!(density(&g, &bigger).unwrap() >= density(&g, &w).unwrap());
    }

    #[test]
    fn weighted_density_matches_brute_force(
        (g, w, f) in (graph(4), kernel(3)).prop_flat_map(|(g, w)| {
            let n = w.blocks();
            (Just(g), Just(w), prop::collection::vec(0i64..=3, n))
        })
    ) {
        let f: Vec<Rational> = f.into_iter().map(int).collect();
        let per_vertex: Vec<Vec<Rational>> = (0..g.vertex_count())
            .map(|_| w.measures().iter().zip(&f).map(|(m, x)| m * x).collect())
            .collect();
        let got = weighted_density(&g, &w, &BlockFunction::new(f)).unwrap();
        prop_assert_eq!(got, brute_density(&g, &w, Some(&per_vertex)));
    }
}

/// `t(H₁ ⋉ H₂, W)`: sum over the shared blocks `z` of the `H₂`-density weighted by the
/// conditioned `H₁`-density with the root in each block.
fn glued_by_factorization(h1: &Graph, spec: &GlueSpec, h2: &Graph, w: &Kernel) -> Rational {
    let n = w.blocks();
    let shared = &spec.independent_set;
    let mut total = Rational::zero();
    for code in 0..n.pow(shared.len() as u32) {
        let z: Vec<usize> = (0..shared.len()).map(|k| code / n.pow(k as u32) % n).collect();
        let mass: Rational = z.iter().map(|&b| w.measures()[b].clone()).product();
        let weight: Vec<Rational> = (0..n)
            .map(|b| {
                let mut pins: Vec<(usize, usize)> = shared.iter().copied().zip(z.iter().copied()).collect();
                pins.push((spec.root, b));
                conditioned_density(h1, w, &Assignment::new(pins)).unwrap()
            })
            .collect();
        let inner = weighted_density(h2, w, &BlockFunction::new(weight)).unwrap();
        total += mass * inner;
    }
    total
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn gluing_factorizes(w in graphon(3), which in 0usize..4, h2 in graph(3)) {
        let (h1, spec) = match which {
            0 => (Graph::new(2, [(0, 1)]).unwrap(), GlueSpec::new(vec![0], 1)),
            1 => (knrs_core::graphs::star(2), GlueSpec::new(vec![1, 2], 0)),
            2 => (path(3), GlueSpec::new(vec![0, 2], 1)),
            _ => (path(2), GlueSpec::new(vec![], 1)),
        };
        let g = glue(&h1, &spec, &h2).unwrap();
        let direct = brute_density(&g, &w, None);
        prop_assert_eq!(density_dp(&g, &w), direct.clone());
        prop_assert_eq!(glued_by_factorization(&h1, &spec, &h2, &w), direct);
    }

    #[test]
    fn operator_powers_add(w in kernel(4), a in 1usize..=3, b in 1usize..=3) {
        let lhs = w.operator_power(a + b).unwrap();
        let rhs = w.operator_power(a).unwrap().operator_product(&w.operator_power(b).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn operator_product_is_bilinear_and_associative(
        (x, y, z, c) in kernel(4).prop_flat_map(|w| {
            let mu = w.measures().to_vec();
            (Just(w), kernel_on(mu.clone()), kernel_on(mu), -3i64..=3)
        })
    ) {
        let c = int(c);
        let left = x.scale(&c).add(&y).unwrap().operator_product_matrix(&z).unwrap();
        let xz = x.operator_product_matrix(&z).unwrap();
        let yz = y.operator_product_matrix(&z).unwrap();
        let n = x.blocks();
        let expected = Matrix::from_fn(n, |i, j| &c * &xz[(i, j)] + &yz[(i, j)]);
        prop_assert_eq!(left, expected);
        // (XY)Z = X(YZ) on raw matrices
        let d = Matrix::from_fn(n, |i, j| if i == j { x.measures()[i].clone() } else { int(0) });
        let xy = x.operator_product_matrix(&y).unwrap();
        let yz2 = y.operator_product_matrix(&z).unwrap();
        prop_assert_eq!(
            xy.matmul(&d).matmul(z.matrix()),
            x.matrix().matmul(&d).matmul(&yz2)
        );
    }

    #[test]
    fn powers_of_zero_regular_kernels_stay_zero_regular(n in 2usize..=5, seed in any::<u64>(), k in 1usize..=4) {
        let w = gen_psd_zero_regular(n, &uniform_measures(n), seed).unwrap();
        prop_assert!(w.is_regular(&int(0)));
        prop_assert!(w.operator_power(k).unwrap().is_regular(&int(0)));
    }
}
