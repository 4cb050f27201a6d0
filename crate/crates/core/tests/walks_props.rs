use num_bigint::BigUint;
use proptest::prelude::*;

use motzkin_rainbow::walks::{count_walks, enumerate_walks, Model, Step, Walk};

fn model() -> impl Strategy<Value = Model> {
    prop_oneof![Just(Model::Motzkin), Just(Model::Fredkin)]
}

/// A uniformly chosen valid walk for small chains.
fn walk() -> impl Strategy<Value = Walk> {
    (1usize..=4, 1u8..=3, model()).prop_flat_map(|(n, j, m)| {
        let all: Vec<Walk> = enumerate_walks(n, j, m, u64::MAX).unwrap().collect();
        let len = all.len();
        (0..len).prop_map(move |i| all[i].clone())
    })
}

/// Independent count: all step sequences filtered by a direct stack check.
fn brute_count(n: usize, j: u8, model: Model) -> u64 {
    let mut alphabet: Vec<Step> = (1..=j).map(Step::Up).collect();
    if model == Model::Motzkin {
        alphabet.push(Step::Flat);
    }
    alphabet.extend((1..=j).map(Step::Down));
    let len = 2 * n;
    let mut count = 0;
    let total = alphabet.len().pow(len as u32);
    for mut code in 0..total {
        let mut stack = Vec::new();
        let mut ok = true;
        for _ in 0..len {
            match alphabet[code % alphabet.len()] {
                Step::Up(c) => stack.push(c),
                Step::Flat => {}
                Step::Down(c) => ok &= stack.pop() == Some(c),
            }
            code /= alphabet.len();
        }
        if ok && stack.is_empty() {
            count += 1;
        }
    }
    count
}

#[test]
fn counts_match_brute_force() {
    for model in [Model::Motzkin, Model::Fredkin] {
        for j in 1..=2 {
            for n in 1..=3 {
                let b = brute_count(n, j, model);
                assert_eq!(count_walks(n, j, model), BigUint::from(b), "{model} n={n} j={j}");
                assert_eq!(enumerate_walks(n, j, model, u64::MAX).unwrap().count() as u64, b);
            }
        }
    }
}

#[test]
fn enumeration_is_sorted_and_distinct() {
    let walks: Vec<Walk> = enumerate_walks(3, 2, Model::Motzkin, u64::MAX).unwrap().collect();
    assert!(walks.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn cap_is_enforced() {
    let err = enumerate_walks(6, 2, Model::Motzkin, 10).err().unwrap();
    assert!(err.is_cap());
}

proptest! {
    #[test]
    fn text_round_trip(w in walk()) {
        let back = Walk::parse(&w.to_string(), w.model(), w.colors()).unwrap();
        prop_assert_eq!(back, w);
    }

    #[test]
    fn reversal_preserves_validity_and_area(w in walk()) {
        let r = w.reversed();
        prop_assert!(r.is_valid());
        prop_assert_eq!(r.area().unwrap(), w.area().unwrap());
        prop_assert_eq!(r.reversed(), w);
    }

    #[test]
    fn stack_height_is_walk_height(w in walk()) {
        let heights = w.height_profile();
        for z in 1..w.len() {
            prop_assert_eq!(w.stack_at(z).unwrap().height() as i64, heights[z - 1]);
        }
    }

    #[test]
    fn pairs_cover_every_arrowed_step(w in walk()) {
        let pairs = w.matched_pairs().unwrap();
        let ups = w.steps().iter().filter(|s| matches!(s, Step::Up(_))).count();
        prop_assert_eq!(pairs.len(), ups);
        for p in &pairs {
            prop_assert_eq!(w.steps()[p.x - 1], Step::Up(p.color));
            prop_assert_eq!(w.steps()[p.y - 1], Step::Down(p.color));
            prop_assert!((p.y - p.x) % 2 == 1 || w.model() == Model::Motzkin);
        }
        // Pairs never cross.
        for a in &pairs {
            for b in &pairs {
                prop_assert!(!(a.x < b.x && b.x < a.y && a.y < b.y));
            }
        }
    }

    #[test]
    fn area_bounded_by_tent(w in walk()) {
        let n = w.half_len() as u64;
        prop_assert!(w.area().unwrap() <= n * n);
        prop_assert!(w.max_height() <= n);
    }
}
