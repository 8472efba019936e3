use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use deligne_core::diagrams::{bell, enumerate_diagrams, enumerate_range};
use deligne_core::knots::{evaluate_knot, label_warning, writhe_prediction};
use deligne_core::modtrace::{
    ambidextrous_solution_space, antisymmetric_mod_dimension, antisymmetrizer, mod_trace, project,
    verify_ambidextrous,
};
use deligne_core::oracle::{check_homomorphism, realization_rank};
use deligne_core::scalars::parse_rational;
use deligne_core::{
    Assignment, Coeff, CoefficientMode, Morphism, PartitionDiagram, Rational, Side, TPoly,
    VerifyOptions,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

#[derive(Parser, Debug)]
#[command(
    name = "deligne",
    version,
    about = "Partition diagrams, modified traces and the graded writhe invariant"
)]
struct Cli {
    /// Output style; `machine` prints one JSON document.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Machine,
}

/// A value of `t`: a rational number or `generic`.
#[derive(Clone, Debug, PartialEq, Eq)]
enum TArg {
    Generic,
    Value(Rational),
}

fn parse_t(s: &str) -> std::result::Result<TArg, String> {
    if s == "generic" {
        return Ok(TArg::Generic);
    }
    parse_rational(s)
        .map(TArg::Value)
        .map_err(|e| e.to_string())
}

/// A value of `q`: a nonzero rational number or `symbolic`.
#[derive(Clone, Debug, PartialEq, Eq)]
enum QArg {
    Symbolic,
    Value(Rational),
}

fn parse_q(s: &str) -> std::result::Result<QArg, String> {
    if s == "symbolic" {
        return Ok(QArg::Symbolic);
    }
    let q = parse_rational(s).map_err(|e| e.to_string())?;
    if q == Rational::from_integer(0.into()) {
        return Err("q must be nonzero".into());
    }
    Ok(QArg::Value(q))
}

fn parse_label(s: &str) -> std::result::Result<(usize, usize), String> {
    let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
    let (a, b) = inner
        .split_once(',')
        .ok_or_else(|| format!("expected a label `a,b`, found `{s}`"))?;
    let num = |x: &str| {
        x.trim()
            .parse::<usize>()
            .map_err(|_| format!("label entries must be nonnegative integers, found `{x}`"))
    };
    Ok((num(a)?, num(b)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Left => Side::Left,
            SideArg::Right => Side::Right,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Stack UPPER on top of LOWER and print the composite.
    Compose {
        upper: String,
        lower: String,
        /// Evaluate the result at this t.
        #[arg(long, value_parser = parse_t, default_value = "generic")]
        t: TArg,
    },
    /// Categorical trace, partial trace, or modified trace of an endomorphism.
    Trace {
        morphism: String,
        /// Close this many strands instead of all of them.
        #[arg(long)]
        strands: Option<usize>,
        #[arg(long, value_enum, default_value_t = SideArg::Right)]
        side: SideArg,
        /// Modified trace `t_n` on the first n strands.
        #[arg(long, conflicts_with = "strands")]
        modified: Option<usize>,
        /// With --modified, sandwich the input by the antisymmetrizer first.
        #[arg(long, requires = "modified")]
        project: bool,
        #[arg(long, value_parser = parse_t, default_value = "generic")]
        t: TArg,
    },
    /// Modified dimensions of the antisymmetric retracts L_1 .. L_n.
    Dims {
        #[arg(long, value_parser = parse_t, default_value = "0")]
        t: TArg,
        #[arg(long, default_value_t = 8)]
        n: usize,
    },
    /// Exhaustively check the ambidexterity of the modified trace on M_n.
    VerifyAmb {
        #[arg(long)]
        n: usize,
        /// Work over Q[t] (the default).
        #[arg(long, conflicts_with = "t")]
        generic: bool,
        #[arg(long, value_parser = parse_t)]
        t: Option<TArg>,
        /// Worker threads; defaults to available parallelism.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Largest arity sum enumerated.
        #[arg(long, default_value_t = deligne_core::diagrams::DEFAULT_CAP)]
        cap: usize,
        /// Also compute every trace literally and compare with the fast path.
        #[arg(long)]
        full: bool,
        /// Suppress progress lines.
        #[arg(long)]
        quiet: bool,
    },
    /// Solve for all ambidextrous functionals on End(M_1).
    SolveAmb {
        #[arg(long, value_parser = parse_t, default_value = "generic")]
        t: TArg,
    },
    /// Decide negligibility of the antisymmetrizer s_n, or of a given morphism.
    Negligible {
        #[arg(long, required_unless_present = "morphism")]
        n: Option<usize>,
        #[arg(long, conflicts_with = "n")]
        morphism: Option<String>,
        #[arg(long, value_parser = parse_t)]
        t: TArg,
        #[arg(long, default_value_t = deligne_core::diagrams::DEFAULT_CAP)]
        cap: usize,
    },
    /// Evaluate a framed knot given as a Morse word file.
    Knot {
        #[arg(long)]
        file: PathBuf,
        /// Strand label a,b.
        #[arg(long, value_parser = parse_label, default_value = "1,0")]
        label: (usize, usize),
        #[arg(long, value_parser = parse_q, default_value = "symbolic")]
        q: QArg,
    },
    /// Cross-check the diagram calculus against matrices on (Q^t0)^{⊗n}.
    OracleCheck {
        #[arg(long, default_value_t = 3)]
        t0: usize,
        /// Check P_n × P_n.
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Sample this many random pairs instead of all of them.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Also report the rank of the realized P_n diagrams.
        #[arg(long)]
        rank: bool,
    },
}

/// Outcome of a command: its stdout text and whether a verification failed.
struct Outcome {
    text: String,
    json: serde_json::Value,
    failed: bool,
}

impl Outcome {
    fn ok(text: String, json: serde_json::Value) -> Self {
        Self {
            text,
            json,
            failed: false,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let rendered = e.render().to_string();
            let line = rendered.lines().next().unwrap_or("invalid arguments");
            eprintln!("{line}");
            return ExitCode::from(1);
        }
    };
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Text => print!("{}", out.text),
                Format::Machine => println!("{}", out.json),
            }
            if out.failed {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Compose { upper, lower, t } => compose(upper, lower, t),
        Command::Trace {
            morphism,
            strands,
            side,
            modified,
            project,
            t,
        } => trace(morphism, *strands, *side, *modified, *project, t),
        Command::Dims { t, n } => dims(t, *n),
        Command::VerifyAmb {
            n,
            generic: _,
            t,
            jobs,
            cap,
            full,
            quiet,
        } => verify_amb(*n, t.as_ref(), *jobs, *cap, *full, *quiet),
        Command::SolveAmb { t } => solve_amb(t),
        Command::Negligible {
            n,
            morphism,
            t,
            cap,
        } => negligible(*n, morphism.as_deref(), t, *cap),
        Command::Knot { file, label, q } => knot(file, *label, q),
        Command::OracleCheck {
            t0,
            n,
            random,
            seed,
            jobs,
            rank,
        } => oracle_check(*t0, *n, *random, *seed, *jobs, *rank),
    }
}

fn parse_morphism(text: &str) -> Result<Morphism<TPoly>> {
    text.parse()
        .with_context(|| format!("cannot parse morphism `{text}`"))
}

fn at_t(f: Morphism<TPoly>, t: &TArg) -> Result<Morphism<TPoly>> {
    Ok(match t {
        TArg::Generic => f,
        TArg::Value(t0) => f.evaluate(&Assignment::t(t0.clone()))?,
    })
}

fn scalar_at_t(s: &TPoly, t: &TArg) -> String {
    match t {
        TArg::Generic => s.to_string(),
        TArg::Value(t0) => s.eval(t0).to_string(),
    }
}

fn t_text(t: &TArg) -> String {
    match t {
        TArg::Generic => "generic".into(),
        TArg::Value(t0) => t0.to_string(),
    }
}

fn compose(upper: &str, lower: &str, t: &TArg) -> Result<Outcome> {
    let f = parse_morphism(upper)?;
    let g = parse_morphism(lower)?;
    let result = at_t(g.compose(&f)?, t)?;
    Ok(Outcome::ok(
        format!("{result}\n"),
        json!({ "command": "compose", "t": t_text(t), "result": result.to_string() }),
    ))
}

fn trace(
    morphism: &str,
    strands: Option<usize>,
    side: SideArg,
    modified: Option<usize>,
    sandwich: bool,
    t: &TArg,
) -> Result<Outcome> {
    let f = parse_morphism(morphism)?;
    if f.source() != f.target() {
        bail!(
            "trace needs an endomorphism, found {} -> {}",
            f.source(),
            f.target()
        );
    }
    let (kind, result) = if let Some(n) = modified {
        let h = if sandwich { project(&f, n)? } else { f };
        ("modified", scalar_at_t(&mod_trace(&h, n)?, t))
    } else if let Some(w) = strands {
        let p = at_t(f.partial_trace(side.into(), w)?, t)?;
        ("partial", p.to_string())
    } else {
        ("categorical", scalar_at_t(&f.categorical_trace()?, t))
    };
    Ok(Outcome::ok(
        format!("{result}\n"),
        json!({ "command": "trace", "kind": kind, "t": t_text(t), "result": result }),
    ))
}

fn dims(t: &TArg, n: usize) -> Result<Outcome> {
    if n == 0 {
        bail!("--n must be at least 1");
    }
    let mut text = String::from("n  d(L_n)\n");
    let mut rows = Vec::new();
    for m in 1..=n {
        let d = scalar_at_t(&antisymmetric_mod_dimension(m)?, t);
        text.push_str(&format!("{m:<2} {d}\n"));
        rows.push(json!({ "n": m, "dimension": d }));
    }
    Ok(Outcome::ok(
        text,
        json!({ "command": "dims", "t": t_text(t), "dimensions": rows }),
    ))
}

fn verify_amb(
    n: usize,
    t: Option<&TArg>,
    jobs: usize,
    cap: usize,
    full: bool,
    quiet: bool,
) -> Result<Outcome> {
    if n == 0 {
        bail!("--n must be at least 1");
    }
    let mode = match t {
        None | Some(TArg::Generic) => CoefficientMode::Generic,
        Some(TArg::Value(t0)) => CoefficientMode::Fixed(t0.clone()),
    };
    let options = VerifyOptions {
        jobs,
        cap,
        full,
        ..Default::default()
    };
    let progress = |done: u128, total: u128| eprintln!("checked {done} / {total} diagrams");
    let report = verify_ambidextrous(
        n,
        &mode,
        &options,
        if quiet { None } else { Some(&progress) },
    )?;
    if !quiet {
        eprintln!(
            "{} diagrams skipped by the stabilizer filter; {:.2?} elapsed",
            report.filtered, report.elapsed
        );
    }
    let mut failures = report.failures.clone();
    failures.sort_by(|x, y| x.diagram.cmp(&y.diagram));
    let mut mismatches = report.cross_check_mismatches.clone();
    mismatches.sort();
    let verdict = report.verdict();
    let mut text = format!(
        "{}: {} diagrams, {} failures\n",
        if verdict { "OK" } else { "FAIL" },
        report.diagrams_checked,
        failures.len()
    );
    if report.diagrams_checked != report.expected {
        text.push_str(&format!("expected {} diagrams\n", report.expected));
    }
    for f in &failures {
        text.push_str(&format!(
            "failure: {}  t_n(Θ_1) = {}  t_n(Θ_2) = {}\n",
            f.diagram, f.theta_one, f.theta_two
        ));
    }
    for d in &mismatches {
        text.push_str(&format!(
            "fast path disagrees with literal computation: {d}\n"
        ));
    }
    let json = json!({
        "command": "verify-amb",
        "n": n,
        "mode": mode.to_string(),
        "diagrams": report.diagrams_checked.to_string(),
        "expected": report.expected.to_string(),
        "filtered": report.filtered.to_string(),
        "failures": failures.iter().map(|f| json!({
            "diagram": f.diagram.to_string(),
            "theta_one": f.theta_one.to_string(),
            "theta_two": f.theta_two.to_string(),
        })).collect::<Vec<_>>(),
        "cross_check_mismatches": mismatches.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
        "verdict": if verdict { "OK" } else { "FAIL" },
    });
    Ok(Outcome {
        text,
        json,
        failed: !verdict,
    })
}

fn solve_amb(t: &TArg) -> Result<Outcome> {
    let t0 = match t {
        TArg::Generic => None,
        TArg::Value(v) => Some(v),
    };
    let space = ambidextrous_solution_space(t0)?;
    let mut text = format!(
        "t = {}: solution space of dimension {} ({} constraints)\n",
        t_text(t),
        space.dimension,
        space.constraints
    );
    for [id, x] in &space.basis {
        text.push_str(&format!("basis: λ(id_1) = {id}, λ(x_1) = {x}\n"));
    }
    Ok(Outcome::ok(
        text,
        json!({
            "command": "solve-amb",
            "t": t_text(t),
            "dimension": space.dimension,
            "constraints": space.constraints,
            "basis": space.basis.iter().map(|[id, x]| json!({ "id_1": id, "x_1": x })).collect::<Vec<_>>(),
        }),
    ))
}

fn negligible(n: Option<usize>, morphism: Option<&str>, t: &TArg, cap: usize) -> Result<Outcome> {
    let TArg::Value(t0) = t else {
        bail!("negligibility is decided at a specific value of t");
    };
    let (name, f) = match (n, morphism) {
        (Some(n), _) => {
            if n == 0 {
                bail!("--n must be at least 1");
            }
            (format!("s_{n}"), antisymmetrizer::<TPoly>(n))
        }
        (None, Some(text)) => (text.to_string(), parse_morphism(text)?),
        (None, None) => bail!("give --n or --morphism"),
    };
    let result = f.is_negligible_capped(t0, cap)?;
    let mut text = format!(
        "{name} at t = {t0}: {}\n",
        if result {
            "negligible"
        } else {
            "not negligible"
        }
    );
    let mut json = json!({ "command": "negligible", "morphism": name, "t": t0.to_string(), "negligible": result });
    if f.source() == f.target() {
        let tr = f.categorical_trace()?;
        text.push_str(&format!("categorical trace: {tr} = {}\n", tr.eval(t0)));
        json["categorical_trace"] = json!(tr.to_string());
    }
    Ok(Outcome::ok(text, json))
}

fn knot(file: &PathBuf, (a, b): (usize, usize), q: &QArg) -> Result<Outcome> {
    let text =
        fs::read_to_string(file).with_context(|| format!("cannot read {}", file.display()))?;
    let word = deligne_core::knots::parse_tangle(&text)
        .with_context(|| format!("in {}", file.display()))?;
    if let Some(w) = label_warning(a, b) {
        eprintln!("warning: {w}");
    }
    let value = evaluate_knot(&word, a, b)?;
    let writhe = word.writhe();
    if value != writhe_prediction(&word, a, b) {
        eprintln!("warning: the evaluation disagrees with the writhe formula");
    }
    let shown = match q {
        QArg::Symbolic => value.to_string(),
        QArg::Value(q0) => Coeff::evaluate(&value, &Assignment::q(q0.clone()))?.to_string(),
    };
    Ok(Outcome::ok(
        format!("{shown} (writhe oracle: {writhe})\n"),
        json!({
            "command": "knot",
            "label": [a, b],
            "value": shown,
            "writhe": writhe,
            "crossings": word.crossings(),
        }),
    ))
}

fn oracle_check(
    t0: usize,
    n: usize,
    random: Option<usize>,
    seed: u64,
    jobs: usize,
    rank: bool,
) -> Result<Outcome> {
    if t0 == 0 {
        bail!("--t0 must be at least 1");
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build()?;
    let pairs: Vec<(PartitionDiagram, PartitionDiagram)> = match random {
        None => {
            let all: Vec<_> =
                enumerate_diagrams(n, n, deligne_core::diagrams::DEFAULT_CAP)?.collect();
            all.iter()
                .flat_map(|f| all.iter().map(move |g| (f.clone(), g.clone())))
                .collect()
        }
        Some(count) => {
            let total = bell(2 * n);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut pick = || -> Result<PartitionDiagram> {
                let k = rng.gen_range(0..total);
                Ok(
                    enumerate_range(n, n, k, k + 1, deligne_core::diagrams::DEFAULT_CAP)?
                        .next()
                        .expect("rank within range"),
                )
            };
            (0..count)
                .map(|_| Ok((pick()?, pick()?)))
                .collect::<Result<_>>()?
        }
    };
    let report = pool.install(|| check_homomorphism(&pairs, t0))?;
    let mut text = format!(
        "{}: {} pairs at t0 = {} ({} compositions, {} tensor products, {} traces), {} mismatches\n",
        if report.passed() { "OK" } else { "FAIL" },
        report.pairs,
        t0,
        report.compositions,
        report.tensors,
        report.traces,
        report.mismatches.len()
    );
    if let Some(m) = report.mismatches.first() {
        text.push_str(&format!("first mismatch: {m}\n"));
    }
    let mut json = json!({
        "command": "oracle-check",
        "t0": t0,
        "n": n,
        "pairs": report.pairs,
        "compositions": report.compositions,
        "tensors": report.tensors,
        "traces": report.traces,
        "mismatches": report.mismatches.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
        "passed": report.passed(),
    });
    if rank {
        let all: Vec<_> = enumerate_diagrams(n, n, deligne_core::diagrams::DEFAULT_CAP)?.collect();
        let r = realization_rank(&all, t0)?;
        text.push_str(&format!(
            "rank of the {} realized diagrams: {r}\n",
            all.len()
        ));
        json["rank"] = json!(r);
        json["diagrams"] = json!(all.len());
    }
    Ok(Outcome {
        text,
        json,
        failed: !report.passed(),
    })
}
