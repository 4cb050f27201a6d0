use num_rational::BigRational;
use proptest::prelude::*;

use motzkin_rainbow::arith::{Deformation, Scalar};
use motzkin_rainbow::state::{
    build_ground_state, cut_distribution, entanglement_entropy, fidelity, norm_sq,
    schmidt_spectrum_dense, spectrum_entropy, DEFAULT_DENSE_CAP,
};
use motzkin_rainbow::walks::Model;

fn model() -> impl Strategy<Value = Model> {
    prop_oneof![Just(Model::Motzkin), Just(Model::Fredkin)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn dp_entropy_matches_dense(n in 1usize..=4, j in 1u8..=2, m in model(), t in 0.05f64..8.0) {
        let t = Deformation::Float(t);
        let state = build_ground_state(n, j, m, t.clone(), true).unwrap();
        for z in 1..2 * n {
            let dp = entanglement_entropy(n, j, m, &t, z).unwrap();
            let dense = spectrum_entropy(&schmidt_spectrum_dense(&state, z, DEFAULT_DENSE_CAP).unwrap());
            prop_assert!((dp - dense).abs() < 1e-10, "z={} dp={} dense={}", z, dp, dense);
        }
    }

    #[test]
    fn schmidt_values_match_dense(n in 1usize..=3, j in 1u8..=2, t in 0.2f64..4.0) {
        let t = Deformation::Float(t);
        let state = build_ground_state(n, j, Model::Motzkin, t.clone(), true).unwrap();
        let z = n;
        let dp = cut_distribution(n, j, Model::Motzkin, &t, z).unwrap().schmidt_values();
        let dense: Vec<f64> = schmidt_spectrum_dense(&state, z, DEFAULT_DENSE_CAP)
            .unwrap()
            .into_iter()
            .filter(|&x| x > 1e-14)
            .collect();
        prop_assert_eq!(dp.len(), dense.len());
        for (a, b) in dp.iter().zip(&dense) {
            prop_assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn entropy_is_mirror_symmetric(n in 1usize..=12, j in 1u8..=3, m in model(), t in 0.1f64..10.0) {
        let t = Deformation::Float(t);
        for z in 1..2 * n {
            let a = entanglement_entropy(n, j, m, &t, z).unwrap();
            let b = entanglement_entropy(n, j, m, &t, 2 * n - z).unwrap();
            prop_assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn norm_matches_enumeration(n in 1usize..=4, j in 1u8..=2, m in model(), p in 1i64..=6, q in 1i64..=6) {
        let t = Deformation::exact(p, q);
        let s = build_ground_state(n, j, m, t.clone(), false).unwrap();
        let enumerated = s.norm_sq().clone();
        prop_assert_eq!(norm_sq(n, j, m, &t).unwrap(), enumerated);
    }

    #[test]
    fn exact_probabilities_sum_to_one(n in 1usize..=3, j in 1u8..=2, p in 1i64..=5, q in 1i64..=5) {
        let s = build_ground_state(n, j, Model::Motzkin, Deformation::exact(p, q), true).unwrap();
        let total: BigRational = s.walks().map(|w| s.probability_exact(w).unwrap()).sum();
        prop_assert_eq!(total, BigRational::from_integer(1.into()));
    }
}

#[test]
fn norm_examples() {
    let n2 = norm_sq(1, 2, Model::Motzkin, &Deformation::exact(1, 2)).unwrap();
    assert_eq!(n2, Scalar::Exact(BigRational::new(3.into(), 2.into())));
}

#[test]
fn fidelity_is_one_with_itself() {
    let t = Deformation::Float(0.7);
    let a = build_ground_state(3, 2, Model::Motzkin, t.clone(), true).unwrap();
    assert!((fidelity(&a, &a).unwrap() - 1.0).abs() < 1e-12);
    let b = build_ground_state(3, 2, Model::Fredkin, t, true).unwrap();
    assert!(fidelity(&a, &b).is_err());
}

#[test]
fn large_chain_in_log_domain() {
    let s = entanglement_entropy(500, 3, Model::Motzkin, &Deformation::Float(1.5), 500).unwrap();
    assert!(s.is_finite() && s > 0.0);
}
