use proptest::prelude::*;

use motzkin_rainbow::arith::{Deformation, Mode};
use motzkin_rainbow::network::{
    bond_to_stack, contract, contract_truncated, network_snapshot, tiling_to_walk,
    validate_tiling, walk_to_tiling,
};
use motzkin_rainbow::state::build_ground_state;
use motzkin_rainbow::walks::{enumerate_walks, Model, Walk};

fn walk() -> impl Strategy<Value = Walk> {
    (1usize..=4, 1u8..=2, prop_oneof![Just(Model::Motzkin), Just(Model::Fredkin)]).prop_flat_map(
        |(n, j, m)| {
            let all: Vec<Walk> = enumerate_walks(n, j, m, u64::MAX).unwrap().collect();
            let len = all.len();
            (0..len).prop_map(move |i| all[i].clone())
        },
    )
}

proptest! {
    #[test]
    fn canonical_tiling_round_trips(w in walk()) {
        let t = walk_to_tiling(&w).unwrap();
        prop_assert!(validate_tiling(&t).valid);
        prop_assert_eq!(tiling_to_walk(&t).unwrap(), w);
    }

    #[test]
    fn tiling_weight_is_twice_the_area(w in walk()) {
        let t = walk_to_tiling(&w).unwrap();
        prop_assert_eq!(u64::from(t.weight()), 2 * w.area().unwrap());
    }

    #[test]
    fn bonds_carry_the_stack(w in walk()) {
        let t = walk_to_tiling(&w).unwrap();
        for z in 1..w.len() {
            prop_assert_eq!(bond_to_stack(&t.bond_vector(z)), Some(w.stack_at(z).unwrap()));
        }
    }

    #[test]
    fn truncation_keeps_low_walks(h in 0usize..=4, p in 1i64..=5, q in 1i64..=5) {
        let t = Deformation::exact(p, q);
        let s = contract_truncated(4, 1, Model::Motzkin, &t, h).unwrap();
        let full = build_ground_state(4, 1, Model::Motzkin, t, false).unwrap();
        let expected: Vec<&Walk> = full.walks().filter(|w| w.max_height() as usize <= h).collect();
        prop_assert_eq!(s.walks().collect::<Vec<_>>(), expected);
    }
}

#[test]
fn float_contraction_matches_exact() {
    for model in [Model::Motzkin, Model::Fredkin] {
        let e = contract(3, 2, model, &Deformation::exact(7, 4), Mode::Exact).unwrap();
        let f = contract(3, 2, model, &Deformation::Float(1.75), Mode::Float).unwrap();
        for w in e.walks() {
            assert!((e.value(w) - f.value(w)).abs() <= 1e-12 * e.value(w));
        }
    }
}

#[test]
fn zero_t_keeps_flat_walk() {
    let s = contract(3, 2, Model::Motzkin, &Deformation::exact(0, 1), Mode::Exact).unwrap();
    let names: Vec<String> = s.walks().map(|w| w.to_string()).collect();
    assert_eq!(names, vec!["F F F F F F"]);
    assert!(contract(2, 1, Model::Fredkin, &Deformation::exact(0, 1), Mode::Exact).is_err());
}

#[test]
fn snapshot_is_stable_json() {
    let a = serde_json::to_string(&network_snapshot(2, 2, Model::Motzkin)).unwrap();
    let b = serde_json::to_string(&network_snapshot(2, 2, Model::Motzkin)).unwrap();
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["cells"].as_array().unwrap().len(), 6);
    assert_eq!(v["tiles"].as_array().unwrap().len(), 12);
}
