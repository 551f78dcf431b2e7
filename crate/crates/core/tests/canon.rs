mod common;

use std::collections::HashMap;

use hompat::graph::{canonical_code, is_isomorphic, is_rooted_isomorphic, rooted_canonical_code};
use hompat::{Graph, RootedPattern};
use proptest::prelude::*;

use common::*;

fn all_graphs(n: usize) -> Vec<Graph> {
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0u32..1 << slots.len())
        .map(|mask| {
            let edges: Vec<_> = (0..slots.len()).filter(|&i| mask >> i & 1 == 1).map(|i| slots[i]).collect();
            Graph::new(format!("g{mask}"), n, &edges).unwrap()
        })
        .collect()
}

#[test]
fn code_classes_are_isomorphism_classes() {
    for n in 1..=6 {
        let mut reps: HashMap<_, Graph> = HashMap::new();
        for g in all_graphs(n) {
            match reps.get(&canonical_code(&g)) {
                Some(r) => assert!(is_isomorphic(r, &g), "{} and {} share a code", r.id(), g.id()),
                None => {
                    reps.insert(canonical_code(&g), g);
                }
            }
        }
        let reps: Vec<&Graph> = reps.values().collect();
        for (i, a) in reps.iter().enumerate() {
            for b in &reps[i + 1..] {
                assert!(!is_isomorphic(a, b), "{} and {} isomorphic with different codes", a.id(), b.id());
            }
        }
    }
}

#[test]
fn rooted_codes_respect_roots() {
    let patterns = connected_rooted_patterns(5);
    for (i, p) in patterns.iter().enumerate() {
        for q in &patterns[i + 1..] {
            assert!(!is_rooted_isomorphic(p, q), "{} ~ {}", p.id(), q.id());
        }
    }
    let p3 = Graph::path(3);
    let end = RootedPattern::new(p3.clone(), 0).unwrap();
    let other_end = RootedPattern::new(p3.clone(), 2).unwrap();
    let centre = RootedPattern::new(p3, 1).unwrap();
    assert_eq!(rooted_canonical_code(&end), rooted_canonical_code(&other_end));
    assert_ne!(rooted_canonical_code(&end), rooted_canonical_code(&centre));
}

#[test]
fn labels_enter_the_code() {
    let a = Graph::with_labels("a", vec![0, 1, 1], &[(0, 1), (1, 2)]).unwrap();
    let b = Graph::with_labels("b", vec![1, 0, 1], &[(0, 1), (1, 2)]).unwrap();
    assert_ne!(canonical_code(&a), canonical_code(&b));
    assert!(!is_isomorphic(&a, &b));
}

#[test]
fn fixture_codes_are_stable() {
    let (g1, h1) = hompat::families::fig1_pair();
    let (g2, h2) = hompat::families::fig2_pair();
    let codes: Vec<String> = [g1, h1, g2, h2].iter().map(|g| canonical_code(g).to_hex()).collect();
    assert_eq!(
        codes,
        [
            "00000006000000000000000000000000000000000000000000000000002d26",
            "00000006000000000000000000000000000000000000000000000000002caa",
            "00000009000000000000000000000000000000000000000000000000000000000000000000000000000319816a10",
            "00000009000000000000000000000000000000000000000000000000000000000000000000000000000319816920",
        ]
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn code_is_permutation_invariant(seed in any::<u64>(), n in 1usize..10, p in 0.1f64..0.9) {
        let mut r = rng(seed);
        let g = random_graph(&mut r, "g", n, p, 2);
        let h = shuffled(&mut r, &g, "h");
        prop_assert_eq!(canonical_code(&g), canonical_code(&h));
        let c = random_connected(&mut r, "c", n, p / 2.0, 2);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut r);
        let v = r.gen_range(0..n);
        let pc = RootedPattern::new(c.clone(), v).unwrap();
        let pp = RootedPattern::new(c.permuted(&perm), perm[v]).unwrap();
        prop_assert_eq!(rooted_canonical_code(&pc), rooted_canonical_code(&pp));
    }

    #[test]
    fn code_equality_matches_isomorphism(seed in any::<u64>(), n in 1usize..8) {
        let mut r = rng(seed);
        let g = random_graph(&mut r, "g", n, 0.4, 2);
        let h = random_graph(&mut r, "h", n, 0.4, 2);
        prop_assert_eq!(canonical_code(&g) == canonical_code(&h), is_isomorphic(&g, &h));
    }
}

use rand::seq::SliceRandom;
use rand::Rng;
