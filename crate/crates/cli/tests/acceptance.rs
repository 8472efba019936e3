//! Runs every acceptance criterion and prints one PASS/FAIL line for each.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use deligne_core::diagrams::{bell, enumerate_diagrams, enumerate_range, DEFAULT_CAP};
use deligne_core::graded::verify_graded_ambidextrous;
use deligne_core::knots::{corpus, evaluate_knot, parse_tangle, writhe_prediction};
use deligne_core::modtrace::{
    ambidextrous_solution_space, antisymmetrizer, antisymmetrizer_dimension_by_cycles,
    falling_binomial, verify_ambidextrous,
};
use deligne_core::morphisms::structure_maps;
use deligne_core::oracle::check_homomorphism;
use deligne_core::scalars::{int, parse_rational, rat};
use deligne_core::{
    CoefficientMode, DiagramClass, Morphism, PartitionDiagram, Perm, QLaurent, Rational, TPoly,
    VerifyOptions,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let elapsed = start.elapsed();
    ensure(elapsed < limit, || {
        format!("{what} took {elapsed:.2?}, limit {limit:?}")
    })
}

fn modified_dimensions() -> Outcome {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_deligne"))
        .args(["dims", "--t", "0", "--n", "8"])
        .current_dir(Path::new(env!("CARGO_MANIFEST_DIR")))
        .output()
        .map_err(|e| e.to_string())?;
    within(start, Duration::from_secs(10), "dims")?;
    ensure(out.status.success(), || "dims exited with an error".into())?;
    let text = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
    let values: Vec<Rational> = text
        .lines()
        .skip(1)
        .map(|l| {
            parse_rational(l.split_whitespace().nth(1).unwrap_or("")).map_err(|e| e.to_string())
        })
        .collect::<Result<_, _>>()?;
    ensure(values.len() == 8, || {
        format!("expected 8 rows, got {}", values.len())
    })?;
    for (i, v) in values.iter().enumerate() {
        let n = i as i64 + 1;
        let expected = rat(if n % 2 == 1 { 1 } else { -1 }, n);
        ensure(*v == expected, || {
            format!("d(L_{n}) = {v}, expected {expected}")
        })?;
    }
    Ok(format!(
        "d(L_n) = (-1)^(n+1)/n for n = 1..8 in {:.2?}",
        start.elapsed()
    ))
}

fn ambidexterity() -> Outcome {
    let start = Instant::now();
    for (n, expected) in [(1, 15u128), (2, 4140)] {
        let r = verify_ambidextrous(
            n,
            &CoefficientMode::Generic,
            &VerifyOptions::default(),
            None,
        )
        .map_err(|e| e.to_string())?;
        ensure(r.verdict() && r.diagrams_checked == expected, || {
            format!(
                "n = {n}: {} diagrams, {} failures",
                r.diagrams_checked,
                r.failures.len()
            )
        })?;
    }
    within(start, Duration::from_secs(60), "generic n = 1, 2")?;
    let generic = start.elapsed();
    let start = Instant::now();
    let options = VerifyOptions {
        jobs: 4,
        ..Default::default()
    };
    let r = verify_ambidextrous(3, &CoefficientMode::Fixed(int(2)), &options, None)
        .map_err(|e| e.to_string())?;
    ensure(r.verdict() && r.diagrams_checked == 4_213_597, || {
        format!(
            "n = 3: {} diagrams, {} failures",
            r.diagrams_checked,
            r.failures.len()
        )
    })?;
    within(start, Duration::from_secs(30 * 60), "n = 3 at t = 2")?;
    Ok(format!(
        "n = 1 (15) and n = 2 (4140) generic in {generic:.2?}; n = 3 (4213597) at t = 2 with 4 workers in {:.2?}",
        start.elapsed()
    ))
}

fn uniqueness() -> Outcome {
    let space = ambidextrous_solution_space(Some(&int(0))).map_err(|e| e.to_string())?;
    ensure(space.dimension == 1, || {
        format!("dimension {}", space.dimension)
    })?;
    ensure(space.basis[0] == ["1".to_string(), "1".to_string()], || {
        format!("basis {:?}", space.basis)
    })?;
    Ok("solution space at t = 0 is spanned by λ(id_1) = λ(x_1) = 1".into())
}

fn sandwich(pi: &PartitionDiagram, n: usize) -> Morphism<TPoly> {
    let s = antisymmetrizer::<TPoly>(n);
    s.compose(&Morphism::from_diagram(pi.clone()))
        .and_then(|m| m.compose(&s))
        .unwrap()
}

fn antisymmetrizer_properties() -> Outcome {
    let start = Instant::now();
    let mut checks = 0;
    for n in 1..=3 {
        let s = antisymmetrizer::<TPoly>(n);
        for sigma in Perm::all(n) {
            let sign = TPoly::constant(int(sigma.sign()));
            let p = Morphism::<TPoly>::permutation(&sigma);
            ensure(
                s.compose(&p).unwrap() == s.scale(&sign)
                    && p.compose(&s).unwrap() == s.scale(&sign),
                || format!("s_{n} does not absorb {sigma}"),
            )?;
            checks += 1;
        }
        for pi in enumerate_diagrams(n, n, DEFAULT_CAP).map_err(|e| e.to_string())? {
            if matches!(pi.classify().unwrap(), DiagramClass::Other) {
                ensure(sandwich(&pi, n).is_zero(), || {
                    format!("s_{n} {pi} s_{n} is not zero")
                })?;
                checks += 1;
            }
        }
        let sxs = sandwich(&PartitionDiagram::x(n), n);
        for sigma in Perm::all(n) {
            for i in 0..n {
                let d = PartitionDiagram::sigma_subset(&sigma, &[i]);
                let sign = TPoly::constant(int(sigma.sign()));
                ensure(sandwich(&d, n) == sxs.scale(&sign), || {
                    format!("σ = {sigma}, i = {i}")
                })?;
                checks += 1;
            }
        }
    }
    within(start, Duration::from_secs(30), "antisymmetrizer suite")?;
    Ok(format!(
        "{checks} identities for n <= 3 in {:.2?}",
        start.elapsed()
    ))
}

fn negligibility() -> Outcome {
    let mut checks = 0;
    for n in 1..=4 {
        let s = antisymmetrizer::<TPoly>(n);
        for t0 in 0..=6i64 {
            let negligible = s.is_negligible(&int(t0)).map_err(|e| e.to_string())?;
            ensure(negligible == (t0 < n as i64), || {
                format!("n = {n}, t0 = {t0}: {negligible}")
            })?;
            checks += 1;
        }
    }
    for n in 1..=5 {
        let tr = antisymmetrizer::<TPoly>(n)
            .categorical_trace()
            .map_err(|e| e.to_string())?;
        ensure(
            tr == falling_binomial(n) && tr == antisymmetrizer_dimension_by_cycles(n),
            || format!("tr(s_{n}) = {tr}"),
        )?;
    }
    Ok(format!(
        "{checks} cases n <= 4, t0 <= 6; tr(s_n) = t(t-1)...(t-n+1)/n! for n <= 5"
    ))
}

fn graded_lift() -> Outcome {
    let report = verify_graded_ambidextrous(1, 0).map_err(|e| e.to_string())?;
    ensure(report.diagrams == 15, || {
        format!("{} diagrams", report.diagrams)
    })?;
    ensure(report.failures.is_empty(), || {
        format!("trace failures: {:?}", report.failures)
    })?;
    ensure(report.functor_failures.is_empty(), || {
        format!(
            "degrading does not commute with the partial trace: {:?}",
            report.functor_failures
        )
    })?;
    Ok(format!(
        "15 diagrams ({} endomorphisms) with symbolic q; degrading commutes with partial traces",
        report.generators
    ))
}

fn writhe_invariant() -> Outcome {
    let start = Instant::now();
    let mut checks = 0;
    for (name, text) in corpus::all() {
        let word = parse_tangle(&text).map_err(|e| e.to_string())?;
        for (a, b) in [(1, 0), (2, 0), (2, 1)] {
            let value = evaluate_knot(&word, a, b).map_err(|e| e.to_string())?;
            let expected = writhe_prediction(&word, a, b);
            ensure(value == expected, || {
                format!("{name} ({a},{b}): {value}, expected {expected}")
            })?;
            checks += 1;
        }
        let trivial = evaluate_knot(&word, 1, 1).map_err(|e| e.to_string())?;
        ensure(trivial == QLaurent::q_pow(0), || {
            format!("{name} (1,1): {trivial}")
        })?;
        checks += 1;
    }
    within(start, Duration::from_secs(5), "knot corpus")?;
    Ok(format!("{checks} evaluations in {:.2?}", start.elapsed()))
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let p2: Vec<_> = enumerate_diagrams(2, 2, DEFAULT_CAP)
        .map_err(|e| e.to_string())?
        .collect();
    let pairs: Vec<_> = p2
        .iter()
        .flat_map(|f| p2.iter().map(move |g| (f.clone(), g.clone())))
        .collect();
    for t0 in [2, 3] {
        let r = check_homomorphism(&pairs, t0).map_err(|e| e.to_string())?;
        ensure(r.passed() && r.traces == 450, || {
            format!("P_2 at t0 = {t0}: {:?}", r.mismatches.first())
        })?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut pick = || {
        let k = rng.gen_range(0..bell(6));
        enumerate_range(3, 3, k, k + 1, DEFAULT_CAP)
            .unwrap()
            .next()
            .unwrap()
    };
    let random: Vec<_> = (0..1000).map(|_| (pick(), pick())).collect();
    let r = check_homomorphism(&random, 3).map_err(|e| e.to_string())?;
    ensure(r.passed(), || {
        format!("P_3 at t0 = 3: {:?}", r.mismatches.first())
    })?;
    within(start, Duration::from_secs(60), "oracle")?;
    Ok(format!(
        "225 pairs at t0 = 2, 3 and 1000 random P_3 pairs at t0 = 3 in {:.2?}",
        start.elapsed()
    ))
}

fn structural_properties() -> Outcome {
    let by_arity = |a: usize, b: usize| -> Vec<PartitionDiagram> {
        enumerate_diagrams(a, b, DEFAULT_CAP).unwrap().collect()
    };
    let mut checks = 0usize;
    for (a, b, c, d) in arity_quadruples(3) {
        for x in by_arity(a, b) {
            for y in by_arity(b, c) {
                let (xy, l1) = x.compose(&y).unwrap();
                for z in by_arity(c, d) {
                    let (left, l2) = xy.compose(&z).unwrap();
                    let (yz, l3) = y.compose(&z).unwrap();
                    let (right, l4) = x.compose(&yz).unwrap();
                    ensure(left == right && l1 + l2 == l3 + l4, || {
                        format!("associativity: {x} {y} {z}")
                    })?;
                    checks += 1;
                }
            }
        }
    }
    for f in by_arity(1, 1).into_iter().chain(by_arity(1, 2)) {
        for g in by_arity(f.bottom(), 1) {
            for h in by_arity(1, 2) {
                for k in by_arity(2, 1) {
                    let (lhs, l1) = f.tensor(&h).compose(&g.tensor(&k)).unwrap();
                    let (fg, l2) = f.compose(&g).unwrap();
                    let (hk, l3) = h.compose(&k).unwrap();
                    ensure(lhs == fg.tensor(&hk) && l1 == l2 + l3, || {
                        format!("interchange: {f} {g} {h} {k}")
                    })?;
                    checks += 1;
                }
            }
        }
    }
    for n in 1..=4 {
        let m = structure_maps::<TPoly>(n);
        let id = Morphism::<TPoly>::identity(n);
        let left = m.ev.tensor(&id).compose(&id.tensor(&m.coev)).unwrap();
        let right = id.tensor(&m.ev).compose(&m.coev.tensor(&id)).unwrap();
        ensure(left == id && right == id, || {
            format!("snake identities at n = {n}")
        })?;
        checks += 1;
    }
    for a in 0..=2 {
        for b in 0..=2 {
            for f in by_arity(a, b) {
                for g in by_arity(b, a) {
                    let f = Morphism::<TPoly>::from_diagram(f.clone());
                    let g = Morphism::<TPoly>::from_diagram(g);
                    let fg = f.compose(&g).unwrap().categorical_trace().unwrap();
                    let gf = g.compose(&f).unwrap().categorical_trace().unwrap();
                    ensure(fg == gf, || format!("cyclicity: {f} {g}"))?;
                    checks += 1;
                }
            }
        }
    }
    let squares: Vec<_> = (0..=2).flat_map(|n| by_arity(n, n)).collect();
    for f in &squares {
        for g in &squares {
            let f = Morphism::<TPoly>::from_diagram(f.clone());
            let g = Morphism::<TPoly>::from_diagram(g.clone());
            let lhs = f.tensor(&g).categorical_trace().unwrap();
            ensure(
                lhs == f.categorical_trace().unwrap() * g.categorical_trace().unwrap(),
                || format!("multiplicativity: {f} {g}"),
            )?;
            checks += 1;
        }
    }
    for (a, b, expected) in [(1, 1, 2usize), (2, 2, 15), (4, 4, 4140)] {
        let count = enumerate_diagrams(a, b, DEFAULT_CAP).unwrap().count();
        ensure(count == expected, || {
            format!("|P({a},{b})| = {count}, expected {expected}")
        })?;
    }
    Ok(format!(
        "{checks} exact identities; Bell(2) = 2, Bell(4) = 15, Bell(8) = 4140"
    ))
}

/// All `(a, b, c, d)` with entries below `bound`.
fn arity_quadruples(bound: usize) -> Vec<(usize, usize, usize, usize)> {
    let mut out = Vec::new();
    for a in 0..bound {
        for b in 0..bound {
            for c in 0..bound {
                for d in 0..bound {
                    out.push((a, b, c, d));
                }
            }
        }
    }
    out
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("modified dimensions", modified_dimensions),
        ("ambidexterity", ambidexterity),
        ("uniqueness at n = 1", uniqueness),
        ("antisymmetrizer identities", antisymmetrizer_properties),
        ("negligibility", negligibility),
        ("graded lift", graded_lift),
        ("writhe invariant", writhe_invariant),
        ("oracle equivalence", oracle_equivalence),
        ("structural properties", structural_properties),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome =
            catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
