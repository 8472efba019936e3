use deligne_core::diagrams::{bell, enumerate_diagrams, enumerate_range, DEFAULT_CAP};
use deligne_core::modtrace::antisymmetrizer;
use deligne_core::oracle::{
    check_homomorphism, realization_rank, realize, realize_morphism, SparseMatrix,
};
use deligne_core::scalars::int;
use deligne_core::{Morphism, PartitionDiagram, TPoly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn all_pairs(n: usize) -> Vec<(PartitionDiagram, PartitionDiagram)> {
    let all: Vec<_> = enumerate_diagrams(n, n, DEFAULT_CAP).unwrap().collect();
    all.iter()
        .flat_map(|f| all.iter().map(move |g| (f.clone(), g.clone())))
        .collect()
}

fn random_diagram(rng: &mut ChaCha8Rng, a: usize, b: usize) -> PartitionDiagram {
    let k = rng.gen_range(0..bell(a + b));
    enumerate_range(a, b, k, k + 1, DEFAULT_CAP)
        .unwrap()
        .next()
        .unwrap()
}

#[test]
fn exhaustive_on_p2_at_two_and_three() {
    let pairs = all_pairs(2);
    assert_eq!(pairs.len(), 225);
    for t0 in [2, 3] {
        let report = check_homomorphism(&pairs, t0).unwrap();
        assert!(report.passed(), "{:?}", report.mismatches.first());
        assert_eq!(
            (report.compositions, report.tensors, report.traces),
            (225, 225, 450)
        );
    }
}

#[test]
fn random_pairs_from_p3() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let pairs: Vec<_> = (0..1000)
        .map(|_| {
            (
                random_diagram(&mut rng, 3, 3),
                random_diagram(&mut rng, 3, 3),
            )
        })
        .collect();
    let report = check_homomorphism(&pairs, 3).unwrap();
    assert!(report.passed(), "{:?}", report.mismatches.first());
    assert_eq!(report.compositions, 1000);
}

#[test]
fn mixed_arities_compose_when_they_meet() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut pairs = Vec::new();
    for _ in 0..200 {
        let (a, b, c) = (
            rng.gen_range(0..4),
            rng.gen_range(0..4),
            rng.gen_range(0..4),
        );
        pairs.push((
            random_diagram(&mut rng, b, c),
            random_diagram(&mut rng, a, b),
        ));
    }
    let report = check_homomorphism(&pairs, 2).unwrap();
    assert!(report.passed(), "{:?}", report.mismatches.first());
    assert_eq!(report.compositions, 200);
}

#[test]
fn linear_combinations_realize_linearly() {
    for n in 1..=3 {
        let s = antisymmetrizer::<TPoly>(n);
        let m = realize_morphism(&s, 3).unwrap();
        // the antisymmetrizer is an idempotent projecting onto Λ^n(Q^3)
        assert_eq!(m.mul(&m), m);
        let binom = [3, 3, 1][n - 1];
        assert_eq!(m.trace(), int(binom));
    }
    let x1 = Morphism::<TPoly>::from_diagram(PartitionDiagram::x(1));
    let twice = x1.add(&x1).unwrap();
    assert_eq!(
        realize_morphism(&twice, 4).unwrap(),
        realize(&PartitionDiagram::x(1), 4).unwrap().scale(&int(2))
    );
}

#[test]
fn realization_is_injective_on_p2_at_four() {
    let all: Vec<_> = enumerate_diagrams(2, 2, DEFAULT_CAP).unwrap().collect();
    assert_eq!(realization_rank(&all, 4).unwrap(), 15);
}

#[test]
fn identity_and_swap() {
    let id2 = realize(&PartitionDiagram::identity(2), 3).unwrap();
    assert_eq!(id2, SparseMatrix::identity(9));
    let swap = realize(&"{1,2'}{2,1'}".parse().unwrap(), 3).unwrap();
    assert_eq!(swap.mul(&swap), id2);
    assert_eq!(swap.trace(), int(3));
}
