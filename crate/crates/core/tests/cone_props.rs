mod common;

use common::{graphon, kernel, psd_by_minors, simplex_min_oracle, subsets};
use knrs_core::cones::{
    cut_norm, is_copositive, is_locally_dense, is_psd, min_simplex_quadratic, spectrum,
};
use knrs_core::homdensity::cycle_density_spectral_exact;
use knrs_core::scalar::{int, ratio, Scalar};
use knrs_core::search::random_psd;
use knrs_core::{BlockFunction, Kernel, Matrix, Rational};
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn brute_cut_norm(w: &Kernel) -> Rational {
    let n = w.blocks();
    let mut best = Rational::zero();
    for s in subsets(n) {
        for t in subsets(n) {
            let mut mass = Rational::zero();
            for &i in &s {
                for &j in &t {
                    mass += &w.measures()[i] * &w.measures()[j] * w.entry(i, j);
                }
            }
            best = best.max(mass.abs());
        }
    }
    best
}

fn positive_weights(n: usize) -> impl Strategy<Value = BlockFunction<Rational>> {
    prop::collection::vec(1i64..=5, n).prop_map(|v| BlockFunction::new(v.into_iter().map(int).collect()))
}

proptest! {
    #[test]
    fn psd_agrees_with_principal_minors(w in kernel(4)) {
        let v = is_psd(&w);
        prop_assert_eq!(v.holds, psd_by_minors(w.matrix()));
        if let Some(f) = v.witness {
            prop_assert!(w.quadratic_form(&f).unwrap().is_negative());
        }
    }

    #[test]
    fn simplex_minimum_agrees_with_oracle(w in kernel(4)) {
        let m = min_simplex_quadratic(w.matrix()).unwrap();
        prop_assert_eq!(&m.value, &simplex_min_oracle(w.matrix()));
        prop_assert_eq!(w.matrix().quadratic_form(&m.argmin), m.value);
        prop_assert!(m.argmin.iter().all(|x| !x.is_negative()));
        prop_assert_eq!(m.argmin.iter().sum::<Rational>(), int(1));
    }

    #[test]
    fn local_density_is_copositivity_of_the_shift(w in graphon(4), p in 0i64..=8) {
        let p = ratio(p, 8);
        let v = is_locally_dense(&w, &p).unwrap();
        let n = w.blocks();
        let shifted = Matrix::from_fn(n, |i, j| w.entry(i, j) - &p);
        prop_assert_eq!(v.holds, min_simplex_quadratic(&shifted).unwrap().value >= int(0));
        if let Some(f) = v.witness {
            prop_assert!(f.is_nonnegative());
            prop_assert!(w.shift(&-&p).quadratic_form(&f).unwrap().is_negative());
        }
    }

    #[test]
    fn reweighting_preserves_cone_membership(
        (w, r) in kernel(4).prop_flat_map(|w| { let n = w.blocks(); (Just(w), positive_weights(n)) })
    ) {
        let rw = w.reweight(&r).unwrap();
        prop_assert_eq!(is_psd(&rw).holds, is_psd(&w).holds);
        prop_assert_eq!(is_copositive(&rw).unwrap().holds, is_copositive(&w).unwrap().holds);
    }

    #[test]
    fn cut_norm_agrees_with_brute_force(w in kernel(4)) {
        prop_assert_eq!(cut_norm(&w).unwrap(), brute_cut_norm(&w));
    }

    #[test]
    fn spectrum_matches_traces(w in kernel(5)) {
        let report = spectrum(&w).unwrap();
        for k in 2..=4usize {
            let exact = cycle_density_spectral_exact(k, &w).unwrap().to_f64();
            let from_eigs: f64 = report.eigenvalues.iter().map(|l| l.powi(k as i32)).sum();
            prop_assert!((exact - from_eigs).abs() <= 1e-9 * (1.0 + exact.abs()), "k={} {} vs {}", k, exact, from_eigs);
        }
    }

    #[test]
    fn psd_closure(n in 1usize..=4, seed in any::<u64>(), k in 1usize..=3) {
        let w = random_psd(n, seed).unwrap();
        prop_assert!(is_psd(&w.operator_power(k).unwrap()).holds);
        prop_assert!(is_psd(&w.hadamard_product(&w).unwrap()).holds);
        if n <= 2 {
            prop_assert!(is_psd(&w.tensor_power(k).unwrap()).holds);
        }
    }
}
