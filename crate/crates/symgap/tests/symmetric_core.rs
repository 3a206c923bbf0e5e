mod common;

use proptest::prelude::*;
use symgap::symmetric_core::{compose, enumerate_sym, factorial, Permutation, VertexSet};

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<usize>>()).prop_shuffle().prop_map(|v| Permutation::from_images(&v).unwrap())
}

proptest! {
    #[test]
    fn inverse_cancels(p in (1usize..=8).prop_flat_map(permutation)) {
        prop_assert!(compose(&p, &p.inverse()).unwrap().is_identity());
        prop_assert!(compose(&p.inverse(), &p).unwrap().is_identity());
    }

    #[test]
    fn composition_is_associative((a, b, c) in (1usize..=7).prop_flat_map(|n| (permutation(n), permutation(n), permutation(n)))) {
        let left = compose(&compose(&a, &b).unwrap(), &c).unwrap();
        let right = compose(&a, &compose(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn cycle_notation_round_trips(p in (1usize..=8).prop_flat_map(permutation)) {
        let text = p.to_string();
        prop_assert_eq!(Permutation::parse_cycles(&text, p.degree()).unwrap(), p);
    }

    #[test]
    fn support_is_moved_points(p in (1usize..=8).prop_flat_map(permutation)) {
        let moved: Vec<usize> = (1..=p.degree()).filter(|&i| p.apply(i) != i).collect();
        let support = p.support();
        prop_assert_eq!(support.members(), moved.as_slice());
        prop_assert_eq!(p.support().is_empty(), p.is_identity());
    }
}

#[test]
fn enumeration_counts_and_supports() {
    for n in 1..=5 {
        for a in common::subsets(1, n) {
            let perms = enumerate_sym(&a, n).unwrap();
            let expected = if a.is_empty() { 1 } else { factorial(a.len()) };
            assert_eq!(perms.len() as u64, expected, "{a}");
            for p in &perms {
                assert!(p.support().is_subset(&a));
                assert!((1..=n).filter(|&i| !a.contains(i)).all(|i| p.apply(i) == i));
            }
            let mut sorted = perms.clone();
            sorted.sort_by_key(|p| p.images());
            assert_eq!(sorted, perms, "lexicographic order for {a}");
        }
    }
}

#[test]
fn malformed_inputs_rejected() {
    assert!(Permutation::from_images(&[1, 1, 2]).is_err());
    assert!(Permutation::from_images(&[2, 3, 4]).is_err());
    assert!(Permutation::parse_cycles("(1 4)", 3).is_err());
    assert!("1,1".parse::<VertexSet>().is_err());
    assert!(enumerate_sym(&VertexSet::new([2, 7]), 5).is_err());
}
