use std::collections::HashSet;

use deligne_core::diagrams::{bell, enumerate_diagrams, DEFAULT_CAP};
use deligne_core::{DiagramClass, PartitionDiagram, Perm};
use proptest::prelude::*;

fn diagram(top: usize, bottom: usize) -> impl Strategy<Value = PartitionDiagram> {
    let n = top + bottom;
    prop::collection::vec(0..n.max(1), n)
        .prop_map(move |raw| PartitionDiagram::from_labels(top, bottom, &raw))
}

fn chain3() -> impl Strategy<Value = (PartitionDiagram, PartitionDiagram, PartitionDiagram)> {
    (0usize..4, 0usize..4, 0usize..4, 0usize..4)
        .prop_flat_map(|(a, b, c, d)| (diagram(a, b), diagram(b, c), diagram(c, d)))
}

proptest! {
    #[test]
    fn composition_is_associative((d1, d2, d3) in chain3()) {
        let (d12, l12) = d1.compose(&d2).unwrap();
        let (left, l1) = d12.compose(&d3).unwrap();
        let (d23, l23) = d2.compose(&d3).unwrap();
        let (right, l2) = d1.compose(&d23).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(l12 + l1, l23 + l2);
    }

    #[test]
    fn identity_is_neutral(d in (0usize..5, 0usize..5).prop_flat_map(|(a, b)| diagram(a, b))) {
        let (above, l1) = PartitionDiagram::identity(d.top()).compose(&d).unwrap();
        let (below, l2) = d.compose(&PartitionDiagram::identity(d.bottom())).unwrap();
        prop_assert_eq!((above, l1), (d.clone(), 0));
        prop_assert_eq!((below, l2), (d, 0));
    }

    #[test]
    fn interchange_law(
        (f, h) in (0usize..3, 0usize..3, 0usize..3).prop_flat_map(|(a, b, c)| (diagram(a, b), diagram(b, c))),
        (g, k) in (0usize..3, 0usize..3, 0usize..3).prop_flat_map(|(a, b, c)| (diagram(a, b), diagram(b, c))),
    ) {
        let (lhs, l1) = f.tensor(&g).compose(&h.tensor(&k)).unwrap();
        let (fh, l2) = f.compose(&h).unwrap();
        let (gk, l3) = g.compose(&k).unwrap();
        prop_assert_eq!(lhs, fh.tensor(&gk));
        prop_assert_eq!(l1, l2 + l3);
    }

    #[test]
    fn tensor_is_associative(
        a in (0usize..3, 0usize..3).prop_flat_map(|(x, y)| diagram(x, y)),
        b in (0usize..3, 0usize..3).prop_flat_map(|(x, y)| diagram(x, y)),
        c in (0usize..3, 0usize..3).prop_flat_map(|(x, y)| diagram(x, y)),
    ) {
        prop_assert_eq!(a.tensor(&b).tensor(&c), a.tensor(&b.tensor(&c)));
        prop_assert_eq!(a.tensor(&PartitionDiagram::empty()), a);
    }

    #[test]
    fn flip_is_an_involutive_antihomomorphism(
        (d1, d2) in (0usize..4, 0usize..4, 0usize..4).prop_flat_map(|(a, b, c)| (diagram(a, b), diagram(b, c))),
    ) {
        prop_assert_eq!(d1.flip().flip(), d1.clone());
        let (d12, l) = d1.compose(&d2).unwrap();
        prop_assert_eq!(d2.flip().compose(&d1.flip()).unwrap(), (d12.flip(), l));
    }

    #[test]
    fn text_round_trip(d in (0usize..5, 0usize..5).prop_flat_map(|(a, b)| diagram(a, b))) {
        let back: PartitionDiagram = d.to_string().parse().unwrap();
        prop_assert_eq!(back, d);
    }

    #[test]
    fn permutation_diagrams_compose_like_permutations(
        (s, r) in (1usize..6).prop_flat_map(|n| {
            let perm = Just((0..n).collect::<Vec<_>>()).prop_shuffle();
            (perm.clone(), perm)
        }),
    ) {
        let s = Perm::new(s).unwrap();
        let r = Perm::new(r).unwrap();
        let (d, loops) = PartitionDiagram::permutation(&s)
            .compose(&PartitionDiagram::permutation(&r))
            .unwrap();
        prop_assert_eq!(loops, 0);
        match d.classify().unwrap() {
            DiagramClass::Permutation(p) => prop_assert_eq!(p.sign(), s.sign() * r.sign()),
            other => prop_assert!(false, "expected a permutation, got {:?}", other),
        }
    }
}

#[test]
fn enumeration_counts_match_bell_numbers() {
    for (a, b, expected) in [
        (1, 1, 2u128),
        (2, 2, 15),
        (4, 4, 4140),
        (0, 3, 5),
        (3, 2, 52),
    ] {
        let all: Vec<_> = enumerate_diagrams(a, b, DEFAULT_CAP).unwrap().collect();
        assert_eq!(all.len() as u128, expected);
        assert_eq!(bell(a + b), expected);
        let distinct: HashSet<_> = all.iter().collect();
        assert_eq!(distinct.len(), all.len());
    }
}

#[test]
fn enumeration_refuses_past_the_cap() {
    let err = enumerate_diagrams(8, 8, DEFAULT_CAP).unwrap_err();
    assert!(err.to_string().contains("10480142147"), "{err}");
    assert!(enumerate_diagrams(8, 8, 16).is_ok());
}
