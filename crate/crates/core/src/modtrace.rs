//! The antisymmetrizer `s_n`, the object `M_n = ([n], s_n)`, the functional
//! `t_n` on `End(M_n)`, and the modified trace it induces.
//!
//! `End(M_n)` has basis `s_n`, `s_n x_n s_n`, and `t_n` sends both to one.
//! Ambidexterity asks that `t_n(tr_R(h)) = t_n(tr_L(h))` for every
//! `h = (s_n ⊗ s_n) π (s_n ⊗ s_n)` with `π ∈ P_{2n}`.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::diagrams::{
    bell, enumerate_diagrams, enumerate_range, DiagramClass, PartitionDiagram, Side, DEFAULT_CAP,
};
use crate::error::{Error, Result};
use crate::linalg::{nullspace, Field, RatFunc};
use crate::morphisms::{Morphism, RetractObject};
use crate::perm::{factorial, Perm};
use crate::scalars::{Assignment, Coeff, Rational, TPoly};

/// `s_n = (1/n!) Σ sgn(σ) σ`.
pub fn antisymmetrizer<S: Coeff>(n: usize) -> Morphism<S> {
    let inv = Rational::new(1.into(), factorial(n).into());
    let mut s = Morphism::zero(n, n);
    for sigma in Perm::all(n) {
        let c = S::from_rational(&inv * Rational::from_integer(sigma.sign().into()));
        s.add_term(PartitionDiagram::permutation(&sigma), c);
    }
    s
}

/// `s_n ⊗ id_k`.
pub fn partial_antisymmetrizer<S: Coeff>(n: usize, k: usize) -> Morphism<S> {
    antisymmetrizer::<S>(n).tensor(&Morphism::identity(k))
}

/// `(s_n ⊗ id_k) f (s_n ⊗ id_k)`, the explicit projection onto morphisms
/// sandwiched on their first `n` strands.
pub fn project<S: Coeff>(f: &Morphism<S>, n: usize) -> Result<Morphism<S>> {
    if !f.is_square() {
        return Err(Error::NotSquare {
            top: f.source(),
            bottom: f.target(),
        });
    }
    if n > f.source() {
        return Err(Error::TooManyStrands {
            strands: n,
            arity: f.source(),
        });
    }
    let e = partial_antisymmetrizer::<S>(n, f.source() - n);
    e.compose(f)?.compose(&e)
}

fn is_sandwiched<S: Coeff>(f: &Morphism<S>, n: usize) -> Result<bool> {
    Ok(project(f, n)? == *f)
}

/// `α s_n + β s_n x_n s_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndMnElement<S = TPoly> {
    pub n: usize,
    pub alpha: S,
    pub beta: S,
}

impl<S: Coeff> EndMnElement<S> {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            alpha: S::zero(),
            beta: S::zero(),
        }
    }

    /// `t_n`: both basis elements go to one.
    pub fn t_n(&self) -> S {
        let mut s = self.alpha.clone();
        s.add_ref(&self.beta);
        s
    }

    pub fn to_morphism(&self) -> Morphism<S> {
        let s = antisymmetrizer::<S>(self.n);
        let x = Morphism::from_diagram(PartitionDiagram::x(self.n));
        let sxs = s.compose(&x).and_then(|m| m.compose(&s)).expect("square");
        s.scale(&self.alpha)
            .add(&sxs.scale(&self.beta))
            .expect("same arities")
    }

    /// Specializes both coordinates.
    pub fn evaluate(&self, assignment: &Assignment) -> Result<(Rational, Rational)> {
        Ok((
            self.alpha.evaluate(assignment)?,
            self.beta.evaluate(assignment)?,
        ))
    }
}

/// Coordinates of a sandwiched `f ∈ End([n])` in the basis `s_n`,
/// `s_n x_n s_n`.
pub fn decompose_end_mn<S: Coeff>(f: &Morphism<S>, n: usize) -> Result<EndMnElement<S>> {
    if n == 0 {
        return Err(Error::InvalidArgument("End(M_n) needs n >= 1".into()));
    }
    if f.source() != n || f.target() != n {
        return Err(Error::ArityMismatch {
            expected: n,
            found: if f.source() != n {
                f.source()
            } else {
                f.target()
            },
        });
    }
    if !is_sandwiched(f, n)? {
        return Err(Error::NotInEndMn(n));
    }
    Ok(decompose_unchecked(f, n))
}

/// Reads off coordinates assuming the sandwich holds: permutation terms
/// feed `α`, punctured permutation terms feed `β`, each weighted by the
/// sign of its witness permutation.
fn decompose_unchecked<S: Coeff>(f: &Morphism<S>, n: usize) -> EndMnElement<S> {
    let mut out = EndMnElement::<S>::zero(n);
    for (d, c) in f.terms() {
        match d.classify().expect("square") {
            DiagramClass::Permutation(sigma) => out.alpha.add_ref(&signed(c, sigma.sign())),
            DiagramClass::PuncturedPermutation { sigma, .. } => {
                out.beta.add_ref(&signed(c, sigma.sign()))
            }
            DiagramClass::Other => {}
        }
    }
    out
}

fn signed<S: Coeff>(c: &S, sign: i64) -> S {
    if sign > 0 {
        c.clone()
    } else {
        c.neg_ref()
    }
}

/// Which reconstruction of `Θ` to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThetaKind {
    /// Right partial trace of the sandwich.
    One,
    /// Left partial trace of the sandwich.
    Two,
}

impl ThetaKind {
    fn side(self) -> Side {
        match self {
            ThetaKind::One => Side::Right,
            ThetaKind::Two => Side::Left,
        }
    }
}

/// `Θ_1(π) = tr_R(h)`, `Θ_2(π) = tr_L(h)` for
/// `h = (s_n ⊗ s_n) π (s_n ⊗ s_n)`, computed literally.
pub fn theta<S: Coeff>(pi: &PartitionDiagram, which: ThetaKind) -> Result<EndMnElement<S>> {
    let (n, h) = sandwich_2n::<S>(pi)?;
    let traced = h.partial_trace(which.side(), n)?;
    decompose_end_mn(&traced, n)
}

fn sandwich_2n<S: Coeff>(pi: &PartitionDiagram) -> Result<(usize, Morphism<S>)> {
    if !pi.is_square() {
        return Err(Error::NotSquare {
            top: pi.top(),
            bottom: pi.bottom(),
        });
    }
    if !pi.top().is_multiple_of(2) {
        return Err(Error::OddArity(pi.top()));
    }
    let n = pi.top() / 2;
    let s = antisymmetrizer::<S>(n);
    let ss = s.tensor(&s);
    let h = ss
        .compose(&Morphism::from_diagram(pi.clone()))?
        .compose(&ss)?;
    Ok((n, h))
}

/// `n! · t_n(Θ(π))` as integer coefficients of `1, t, t^2, ...`.
///
/// Cyclicity of the partial trace gives
/// `Θ_1(π) = s_n · tr_R(π ∘ (id ⊗ s_n)) · s_n`, and `t_n(s_n μ s_n)` is the
/// sign of the witness permutation when `μ` is a permutation or a punctured
/// permutation, and zero otherwise. `Θ_2` is the mirror image.
pub fn theta_t_n_counts(pi: &PartitionDiagram, which: ThetaKind) -> Result<Vec<i64>> {
    if !pi.is_square() {
        return Err(Error::NotSquare {
            top: pi.top(),
            bottom: pi.bottom(),
        });
    }
    if !pi.top().is_multiple_of(2) {
        return Err(Error::OddArity(pi.top()));
    }
    let n = pi.top() / 2;
    let m = 2 * n;
    let labels = pi.labels();
    let mut counts = vec![0i64; n + 1];
    let mut raw = labels.to_vec();
    let offset = match which {
        ThetaKind::One => n,
        ThetaKind::Two => 0,
    };
    for rho in Perm::all(n) {
        // precompose with ρ on the traced strands: new top offset+i reads π's
        // top offset+ρ(i)
        for i in 0..n {
            raw[offset + i] = labels[offset + rho.apply(i)];
        }
        let permuted = PartitionDiagram::from_labels(m, m, &raw);
        let (mu, loops) = permuted.trace_strands(which.side(), n)?;
        let weight = match mu.classify()? {
            DiagramClass::Permutation(sigma) => sigma.sign(),
            DiagramClass::PuncturedPermutation { sigma, .. } => sigma.sign(),
            DiagramClass::Other => 0,
        };
        counts[loops as usize] += rho.sign() * weight;
    }
    Ok(counts)
}

/// True when a transposition inside one of the four vertex groups (left
/// top, left bottom, right top, right bottom) fixes `π`. Then the sandwich
/// `h = (s_n ⊗ s_n) π (s_n ⊗ s_n)` satisfies `h = -h`, so `h`, `Θ_1(π)` and
/// `Θ_2(π)` all vanish. Swapping two vertices fixes a partition exactly when
/// they share a block or both are singletons.
pub fn sandwich_vanishes(pi: &PartitionDiagram) -> Result<bool> {
    if !pi.is_square() {
        return Err(Error::NotSquare {
            top: pi.top(),
            bottom: pi.bottom(),
        });
    }
    if !pi.top().is_multiple_of(2) {
        return Err(Error::OddArity(pi.top()));
    }
    let n = pi.top() / 2;
    let labels = pi.labels();
    let mut sizes = [0u8; 256];
    for &l in labels {
        sizes[l as usize] += 1;
    }
    let group_fixed = |start: usize| {
        let group = &labels[start..start + n];
        (0..n).any(|i| {
            (i + 1..n).any(|j| {
                group[i] == group[j]
                    || (sizes[group[i] as usize] == 1 && sizes[group[j] as usize] == 1)
            })
        })
    };
    Ok([0, n, 2 * n, 3 * n].into_iter().any(group_fixed))
}

/// True when `π_L` or `π_R` lies outside `S_n ⊔ S_n^-`. This alone does
/// not force `Θ` to vanish once left and right vertices share blocks; see
/// [`sandwich_vanishes`] for the sound criterion.
pub fn restriction_outside_permutations(pi: &PartitionDiagram) -> Result<bool> {
    let r = pi.restrictions()?;
    Ok(matches!(r.left.classify()?, DiagramClass::Other)
        || matches!(r.right.classify()?, DiagramClass::Other))
}

fn counts_to_poly(counts: &[i64], n: usize) -> TPoly {
    let inv = Rational::new(1.into(), factorial(n).into());
    TPoly::from_terms(
        counts
            .iter()
            .enumerate()
            .map(|(e, &c)| (e as u32, &inv * Rational::from_integer(c.into()))),
    )
}

/// Coefficients for [`verify_ambidextrous`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoefficientMode {
    Generic,
    Fixed(Rational),
}

impl std::fmt::Display for CoefficientMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CoefficientMode::Generic => write!(f, "generic t"),
            CoefficientMode::Fixed(t0) => write!(f, "t = {t0}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Worker threads; zero means available parallelism.
    pub jobs: usize,
    /// Largest arity sum enumerated.
    pub cap: usize,
    /// Compute every `Θ` literally from the sandwich as well and record any
    /// disagreement with the fast path.
    pub full: bool,
    /// Diagrams per work unit.
    pub chunk: u128,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            jobs: 0,
            cap: DEFAULT_CAP,
            full: false,
            chunk: 20_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmbidexterityFailure {
    pub diagram: PartitionDiagram,
    pub theta_one: TPoly,
    pub theta_two: TPoly,
}

#[derive(Clone, Debug)]
pub struct AmbidexterityReport {
    pub n: usize,
    pub mode: CoefficientMode,
    pub diagrams_checked: u128,
    pub expected: u128,
    /// Diagrams skipped because a transposition on one vertex group fixes
    /// them.
    pub filtered: u128,
    pub failures: Vec<AmbidexterityFailure>,
    /// Diagrams where the literal and fast computations disagreed (full mode).
    pub cross_check_mismatches: Vec<PartitionDiagram>,
    pub elapsed: Duration,
}

impl AmbidexterityReport {
    pub fn verdict(&self) -> bool {
        self.failures.is_empty()
            && self.cross_check_mismatches.is_empty()
            && self.diagrams_checked == self.expected
    }
}

/// Progress notifications, called with `(done, total)` roughly every
/// 100 000 diagrams.
pub type Progress<'a> = &'a (dyn Fn(u128, u128) + Sync);

pub const PROGRESS_INTERVAL: u128 = 100_000;

/// Checks `t_n(Θ_1(π)) = t_n(Θ_2(π))` for every `π ∈ P_{2n}`.
pub fn verify_ambidextrous(
    n: usize,
    mode: &CoefficientMode,
    options: &VerifyOptions,
    progress: Option<Progress<'_>>,
) -> Result<AmbidexterityReport> {
    if n == 0 {
        return Err(Error::InvalidArgument("ambidexterity needs n >= 1".into()));
    }
    let start = Instant::now();
    let m = 2 * n;
    enumerate_diagrams(m, m, options.cap)?;
    let total = bell(2 * m);
    let chunk = options.chunk.max(1);
    let chunks: Vec<u128> = (0..total.div_ceil(chunk)).collect();
    let done = AtomicU64::new(0);
    let filtered = AtomicU64::new(0);
    let failures = Mutex::new(Vec::new());
    let mismatches = Mutex::new(Vec::new());

    let work = |c: &u128| -> Result<()> {
        let lo = c * chunk;
        let mut local_fail = Vec::new();
        let mut local_mismatch = Vec::new();
        let mut local_filtered = 0u64;
        let mut count = 0u64;
        for pi in enumerate_range(m, m, lo, lo + chunk, options.cap)? {
            count += 1;
            let (one, two, skipped) = check_one(&pi, n, mode)?;
            local_filtered += skipped as u64;
            if options.full && !literal_agrees(&pi, &one, &two, mode)? {
                local_mismatch.push(pi.clone());
            }
            if one != two {
                local_fail.push(AmbidexterityFailure {
                    diagram: pi,
                    theta_one: one,
                    theta_two: two,
                });
            }
        }
        filtered.fetch_add(local_filtered, Ordering::Relaxed);
        failures.lock().unwrap().extend(local_fail);
        mismatches.lock().unwrap().extend(local_mismatch);
        let before = done.fetch_add(count, Ordering::Relaxed) as u128;
        let after = before + count as u128;
        if let Some(p) = progress {
            if before / PROGRESS_INTERVAL != after / PROGRESS_INTERVAL || after == total {
                p(after, total);
            }
        }
        Ok(())
    };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.jobs)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    pool.install(|| chunks.par_iter().try_for_each(work))?;

    let mut failures = failures.into_inner().unwrap();
    failures.sort_by(|a, b| a.diagram.cmp(&b.diagram));
    let mut mismatches = mismatches.into_inner().unwrap();
    mismatches.sort();
    Ok(AmbidexterityReport {
        n,
        mode: mode.clone(),
        diagrams_checked: done.into_inner() as u128,
        expected: total,
        filtered: filtered.into_inner() as u128,
        failures,
        cross_check_mismatches: mismatches,
        elapsed: start.elapsed(),
    })
}

/// Fast-path values of `t_n(Θ_1(π))` and `t_n(Θ_2(π))` in the given mode,
/// and whether the vanishing filter applied.
fn check_one(
    pi: &PartitionDiagram,
    n: usize,
    mode: &CoefficientMode,
) -> Result<(TPoly, TPoly, bool)> {
    if sandwich_vanishes(pi)? {
        return Ok((TPoly::zero(), TPoly::zero(), true));
    }
    let one = counts_to_poly(&theta_t_n_counts(pi, ThetaKind::One)?, n);
    let two = counts_to_poly(&theta_t_n_counts(pi, ThetaKind::Two)?, n);
    Ok(match mode {
        CoefficientMode::Generic => (one, two, false),
        CoefficientMode::Fixed(t0) => (
            TPoly::constant(one.eval(t0)),
            TPoly::constant(two.eval(t0)),
            false,
        ),
    })
}

fn literal_agrees(
    pi: &PartitionDiagram,
    one: &TPoly,
    two: &TPoly,
    mode: &CoefficientMode,
) -> Result<bool> {
    let specialize = |p: TPoly| match mode {
        CoefficientMode::Generic => p,
        CoefficientMode::Fixed(t0) => TPoly::constant(p.eval(t0)),
    };
    let lit_one = specialize(theta::<TPoly>(pi, ThetaKind::One)?.t_n());
    let lit_two = specialize(theta::<TPoly>(pi, ThetaKind::Two)?.t_n());
    Ok(lit_one == *one && lit_two == *two)
}

/// `t_{M_n ⊗ [k]}(h) = t_n(tr_R(h))` for `h` sandwiched by `s_n ⊗ id_k`.
pub fn mod_trace<S: Coeff>(h: &Morphism<S>, n: usize) -> Result<S> {
    if n == 0 {
        return Err(Error::InvalidArgument("modified trace needs n >= 1".into()));
    }
    if !is_sandwiched(h, n)? {
        return Err(Error::NotSandwiched { n });
    }
    let k = h.source() - n;
    let traced = h.partial_trace(Side::Right, k)?;
    Ok(decompose_unchecked(&traced, n).t_n())
}

/// Modified dimension `t(e)` of a retract `([n + k], e)` of `M_n ⊗ [k]`.
pub fn mod_dimension<S: Coeff>(obj: &RetractObject<S>, n: usize) -> Result<S> {
    mod_trace(obj.idempotent(), n)
}

/// Modified dimension of `L_m = ([m], s_m)` under the `n = 1` trace, as a
/// polynomial in `t`.
pub fn antisymmetric_mod_dimension(m: usize) -> Result<TPoly> {
    if m == 0 {
        return Err(Error::InvalidArgument("L_m needs m >= 1".into()));
    }
    mod_dimension(&RetractObject::<TPoly>::antisymmetric(m), 1)
}

/// Solutions `λ = (λ(id_1), λ(x_1))` of `λ(tr_L(π)) = λ(tr_R(π))` for all
/// `π ∈ P_2`.
#[derive(Clone, Debug, PartialEq)]
pub struct SolutionSpace {
    pub dimension: usize,
    /// Basis vectors in coordinates `(λ(id_1), λ(x_1))`, as text.
    pub basis: Vec<[String; 2]>,
    pub constraints: usize,
}

/// Rows `coords(tr_L(π)) - coords(tr_R(π))` in the basis `id_1, x_1`.
pub fn ambidexterity_constraints() -> Result<Vec<[TPoly; 2]>> {
    let id1 = PartitionDiagram::identity(1);
    let x1 = PartitionDiagram::x(1);
    let mut rows = Vec::new();
    for pi in enumerate_diagrams(2, 2, DEFAULT_CAP)? {
        let h = Morphism::<TPoly>::from_diagram(pi);
        let diff = h
            .partial_trace(Side::Left, 1)?
            .sub(&h.partial_trace(Side::Right, 1)?)?;
        rows.push([diff.coeff(&id1), diff.coeff(&x1)]);
    }
    Ok(rows)
}

/// Solves for all ambidextrous functionals on `End([1])`, exactly at `t0`
/// or over `ℚ(t)` when `t0` is `None`.
pub fn ambidextrous_solution_space(t0: Option<&Rational>) -> Result<SolutionSpace> {
    let rows = ambidexterity_constraints()?;
    let constraints = rows.len();
    let basis: Vec<[String; 2]> = match t0 {
        Some(t0) => {
            let m: Vec<Vec<Rational>> = rows
                .iter()
                .map(|r| r.iter().map(|p| p.eval(t0)).collect())
                .collect();
            normalize_basis(nullspace(&m, 2))
        }
        None => {
            let m: Vec<Vec<RatFunc>> = rows
                .iter()
                .map(|r| r.iter().map(|p| RatFunc::from_poly(p.clone())).collect())
                .collect();
            normalize_basis(nullspace(&m, 2))
        }
    };
    Ok(SolutionSpace {
        dimension: basis.len(),
        basis,
        constraints,
    })
}

fn normalize_basis<F: Field>(vectors: Vec<Vec<F>>) -> Vec<[String; 2]> {
    vectors
        .into_iter()
        .map(|v| {
            let lead = v
                .iter()
                .find(|x| !x.is_zero())
                .cloned()
                .unwrap_or_else(F::one);
            let scaled: Vec<F> = v.iter().map(|x| x.div(&lead)).collect();
            [scaled[0].to_string(), scaled[1].to_string()]
        })
        .collect()
}

/// The categorical dimension `tr(s_n)` by direct permutation counting:
/// `(1/n!) Σ sgn(σ) t^{cycles(σ)}`.
pub fn antisymmetrizer_dimension_by_cycles(n: usize) -> TPoly {
    let mut counts = vec![0i64; n + 1];
    for sigma in Perm::all(n) {
        counts[sigma.cycle_count()] += sigma.sign();
    }
    counts_to_poly(&counts, n)
}

/// `t (t - 1) ... (t - n + 1) / n!`.
pub fn falling_binomial(n: usize) -> TPoly {
    let mut p = TPoly::one();
    for i in 0..n {
        p = p * (TPoly::t() - TPoly::constant(Rational::from_integer(i.into())));
    }
    p.scale(&Rational::new(1.into(), factorial(n).into()))
}
