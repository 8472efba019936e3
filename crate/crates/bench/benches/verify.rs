use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use deligne_core::knots::{corpus, evaluate_knot, parse_tangle};
use deligne_core::modtrace::verify_ambidextrous;
use deligne_core::oracle::realize;
use deligne_core::{CoefficientMode, PartitionDiagram, VerifyOptions};

fn ambidexterity(c: &mut Criterion) {
    let options = VerifyOptions {
        jobs: 1,
        ..Default::default()
    };
    c.bench_function("verify n = 2 generic", |b| {
        b.iter(|| {
            black_box(verify_ambidextrous(2, &CoefficientMode::Generic, &options, None).unwrap())
        })
    });
}

fn knots(c: &mut Criterion) {
    let word = parse_tangle(corpus::FIGURE_EIGHT).unwrap();
    c.bench_function("figure-eight at (2,1)", |b| {
        b.iter(|| black_box(evaluate_knot(&word, 2, 1).unwrap()))
    });
}

fn oracle(c: &mut Criterion) {
    let d: PartitionDiagram = "{1,2,1'}{3,3'}{2'}".parse().unwrap();
    c.bench_function("realize a P_3 diagram at t0 = 4", |b| {
        b.iter(|| black_box(realize(&d, 4).unwrap()))
    });
}

criterion_group!(benches, ambidexterity, knots, oracle);
criterion_main!(benches);
