use proptest::prelude::*;

use motzkin_rainbow::arith::{Deformation, Scalar};
use motzkin_rainbow::observables::{
    correlation_g, correlation_report, deficit_table, exponent_fit, matched_probability,
    max_area_deficit, scalar_distance, truncation_fidelity, Window,
};
use motzkin_rainbow::state::build_ground_state;
use motzkin_rainbow::walks::{enumerate_walks, Model};

/// Matched-pair probability summed directly over the enumerated state.
fn matched_by_enumeration(n: usize, t: f64, x1: usize, x2: usize) -> f64 {
    let s = build_ground_state(n, 2, Model::Motzkin, Deformation::Float(t), true).unwrap();
    s.walks()
        .filter(|w| w.matched_pairs().unwrap().iter().any(|p| p.x == x1 && p.y == x2))
        .map(|w| s.probability(w))
        .sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn g_equals_matched_probability(n in 1usize..=4, t in 0.1f64..6.0, a in 0usize..64, b in 0usize..64) {
        let len = 2 * n;
        let (x1, x2) = (1 + a % (len - 1), 0);
        let x2 = if x2 == 0 { x1 + 1 + b % (len - x1) } else { x2 };
        let state = build_ground_state(n, 2, Model::Motzkin, Deformation::Float(t), true).unwrap();
        let g = correlation_g(&state, x1, x2).unwrap().to_f64();
        let m = matched_probability(n, 2, Model::Motzkin, &Deformation::Float(t), x1, x2).unwrap().to_f64();
        prop_assert!((g - m).abs() < 1e-12);
        prop_assert!((m - matched_by_enumeration(n, t, x1, x2)).abs() < 1e-12);
        prop_assert!((-1e-15..=1.0 + 1e-15).contains(&g));
    }

    #[test]
    fn matched_probability_is_mirror_symmetric(n in 1usize..=8, j in 1u8..=3, t in 0.1f64..6.0, a in 0usize..64, b in 0usize..64) {
        let len = 2 * n;
        let x1 = 1 + a % (len - 1);
        let x2 = x1 + 1 + b % (len - x1);
        let t = Deformation::Float(t);
        let p = matched_probability(n, j, Model::Motzkin, &t, x1, x2).unwrap();
        let q = matched_probability(n, j, Model::Motzkin, &t, len + 1 - x2, len + 1 - x1).unwrap();
        prop_assert!(scalar_distance(&p, &q) < 1e-12);
    }
}

#[test]
fn deficits_are_mirror_symmetric() {
    for n in 1..=5 {
        let table = deficit_table(n, Model::Motzkin).unwrap();
        for (&(x1, x2), d) in &table {
            assert_eq!(*d, table[&(2 * n + 1 - x2, 2 * n + 1 - x1)]);
        }
    }
}

#[test]
fn deficit_is_area_oracle() {
    // Direct definition on the listed walks.
    let n = 3;
    for x1 in 1..2 * n {
        for x2 in x1 + 1..=2 * n {
            let best = enumerate_walks(n, 1, Model::Motzkin, u64::MAX)
                .unwrap()
                .filter(|w| w.matched_pairs().unwrap().iter().any(|p| p.x == x1 && p.y == x2))
                .map(|w| w.area().unwrap())
                .max();
            assert_eq!(
                max_area_deficit(n, Model::Motzkin, x1, x2).unwrap(),
                best.map(|a| 9 - a)
            );
        }
    }
}

#[test]
fn exponent_fit_approaches_twice_the_deficit() {
    let target = 2.0 * max_area_deficit(4, Model::Motzkin, 1, 3).unwrap().unwrap() as f64;
    let fits: Vec<f64> = [10, 30, 100]
        .iter()
        .map(|&t| exponent_fit(4, 2, &Deformation::exact(t, 1), 1, 3).unwrap())
        .collect();
    let gaps: Vec<f64> = fits.iter().map(|f| (f - target).abs()).collect();
    assert!(gaps.windows(2).all(|w| w[1] < w[0]), "{fits:?}");
    assert!(exponent_fit(4, 2, &Deformation::exact(100, 1), 1, 8).unwrap().abs() < 0.2);
}

#[test]
fn correlations_vanish_at_zero_t() {
    let s = build_ground_state(3, 2, Model::Motzkin, Deformation::exact(0, 1), true).unwrap();
    for x2 in 2..=6 {
        assert_eq!(correlation_g(&s, 1, x2).unwrap(), Scalar::Exact(Default::default()));
    }
}

#[test]
fn small_window_fidelity_grows_as_t_shrinks() {
    let errs: Vec<f64> = [(2, 5), (1, 5), (1, 10), (1, 20)]
        .iter()
        .map(|&(p, q)| 1.0 - truncation_fidelity(3, 2, &Deformation::exact(p, q), Window::SmallT).unwrap())
        .collect();
    assert!(errs.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn report_has_schema_and_all_pairs() {
    let r = correlation_report(2, Model::Motzkin, &Deformation::exact(2, 1)).unwrap();
    let v = serde_json::to_value(&r).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(r.records.len(), 6);
    assert!(r.records.iter().all(|c| (c.g - c.matched_probability).abs() < 1e-12));
}
