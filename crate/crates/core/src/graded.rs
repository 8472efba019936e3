//! The graded category: objects `[a, b]` of degree `a - b`, a braiding
//! scaled by `q^{deg V · deg W}`, twist `q^{deg V²}`, and the degrading
//! functor to `Rep(S_t)` that forgets the grading.
//!
//! Morphism bodies are diagram combinations over [`QLaurent`]. Hom spaces
//! between objects of different degree are zero.

use std::fmt;
use std::str::FromStr;

use crate::diagrams::{enumerate_diagrams, Side, DEFAULT_CAP};
use crate::error::{Error, Result};
use crate::modtrace::{antisymmetrizer, mod_trace};
use crate::morphisms::{block_transposition, structure_maps, Morphism};
use crate::scalars::{QLaurent, Rational, TPoly};

/// `[a, b]`, optionally cut down by an idempotent on its `a + b` strands.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedObject {
    a: usize,
    b: usize,
    idempotent: Option<Morphism<TPoly>>,
}

impl GradedObject {
    pub fn new(a: usize, b: usize) -> Self {
        Self {
            a,
            b,
            idempotent: None,
        }
    }

    /// The unit object `[0, 0]`.
    pub fn unit() -> Self {
        Self::new(0, 0)
    }

    /// `([a, b], e)`, checking that `e` is an idempotent on `a + b` strands.
    pub fn with_idempotent(a: usize, b: usize, e: Morphism<TPoly>) -> Result<Self> {
        if e.source() != a + b || e.target() != a + b {
            return Err(Error::ArityMismatch {
                expected: a + b,
                found: e.source(),
            });
        }
        if !e.is_idempotent() {
            return Err(Error::NotIdempotent);
        }
        Ok(Self {
            a,
            b,
            idempotent: Some(e),
        })
    }

    /// `M_{a,b} = ([a, b], s_{a+b})`.
    pub fn m(a: usize, b: usize) -> Self {
        Self {
            a,
            b,
            idempotent: Some(antisymmetrizer(a + b)),
        }
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn degree(&self) -> i64 {
        self.a as i64 - self.b as i64
    }

    /// Number of strands after degrading.
    pub fn strands(&self) -> usize {
        self.a + self.b
    }

    pub fn idempotent(&self) -> Option<&Morphism<TPoly>> {
        self.idempotent.as_ref()
    }

    /// The underlying `[a, b]` without its idempotent.
    pub fn underlying(&self) -> Self {
        Self::new(self.a, self.b)
    }

    /// `[a, b]* = [b, a]`, with the transposed idempotent.
    pub fn dual(&self) -> Self {
        Self {
            a: self.b,
            b: self.a,
            idempotent: self.idempotent.as_ref().map(Morphism::dual),
        }
    }

    pub fn tensor(&self, other: &GradedObject) -> Self {
        let idempotent = match (&self.idempotent, &other.idempotent) {
            (None, None) => None,
            (e, f) => {
                let e = e
                    .clone()
                    .unwrap_or_else(|| Morphism::identity(self.strands()));
                let f = f
                    .clone()
                    .unwrap_or_else(|| Morphism::identity(other.strands()));
                Some(e.tensor(&f))
            }
        };
        Self {
            a: self.a + other.a,
            b: self.b + other.b,
            idempotent,
        }
    }

    /// Identity of the object: its idempotent, or the identity diagram.
    fn identity_body(&self) -> Morphism<QLaurent> {
        match &self.idempotent {
            Some(e) => e.map_coeffs(|c| QLaurent::from(c.clone())),
            None => Morphism::identity(self.strands()),
        }
    }
}

impl fmt::Display for GradedObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.a, self.b)?;
        if let Some(e) = &self.idempotent {
            write!(f, " with idempotent {e}")?;
        }
        Ok(())
    }
}

/// Parses `[a,b]` or `a,b`.
impl FromStr for GradedObject {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = text
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .unwrap_or(&text);
        let (a, b) = inner
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("expected `[a,b]`, found `{s}`")))?;
        let parse = |x: &str| {
            x.parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad grading component `{x}` in `{s}`")))
        };
        Ok(Self::new(parse(a)?, parse(b)?))
    }
}

/// A degree-preserving morphism between graded objects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMorphism {
    source: GradedObject,
    target: GradedObject,
    body: Morphism<QLaurent>,
}

impl GradedMorphism {
    /// Rejects bodies of the wrong arity and nonzero bodies between
    /// objects of different degree.
    pub fn new(
        source: GradedObject,
        target: GradedObject,
        body: Morphism<QLaurent>,
    ) -> Result<Self> {
        if body.source() != source.strands() {
            return Err(Error::ArityMismatch {
                expected: source.strands(),
                found: body.source(),
            });
        }
        if body.target() != target.strands() {
            return Err(Error::ArityMismatch {
                expected: target.strands(),
                found: body.target(),
            });
        }
        if source.degree() != target.degree() && !body.is_zero() {
            return Err(Error::Grading(format!(
                "no nonzero morphisms from degree {} to degree {}",
                source.degree(),
                target.degree()
            )));
        }
        Ok(Self {
            source,
            target,
            body,
        })
    }

    pub fn identity(obj: &GradedObject) -> Self {
        Self {
            source: obj.clone(),
            target: obj.clone(),
            body: obj.identity_body(),
        }
    }

    pub fn source(&self) -> &GradedObject {
        &self.source
    }

    pub fn target(&self) -> &GradedObject {
        &self.target
    }

    pub fn body(&self) -> &Morphism<QLaurent> {
        &self.body
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &GradedMorphism) -> Result<Self> {
        if g.target.degree() != self.source.degree() {
            return Err(Error::Grading(format!(
                "cannot compose through degrees {} and {}",
                g.target.degree(),
                self.source.degree()
            )));
        }
        if g.target != self.source {
            return Err(Error::Grading(format!(
                "composing through {} and {}",
                g.target, self.source
            )));
        }
        Ok(Self {
            source: g.source.clone(),
            target: self.target.clone(),
            body: self.body.compose(&g.body)?,
        })
    }

    pub fn tensor(&self, other: &GradedMorphism) -> Self {
        Self {
            source: self.source.tensor(&other.source),
            target: self.target.tensor(&other.target),
            body: self.body.tensor(&other.body),
        }
    }

    pub fn scale(&self, c: &QLaurent) -> Self {
        Self {
            body: self.body.scale(c),
            ..self.clone()
        }
    }

    pub fn add(&self, other: &GradedMorphism) -> Result<Self> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::Grading(
                "adding morphisms with different ends".into(),
            ));
        }
        Ok(Self {
            body: self.body.add(&other.body)?,
            ..self.clone()
        })
    }

    /// Right partial trace over the last tensor factor `w`:
    /// `(id_U ⊗ ev'_W)(f ⊗ id_{W*})(id_U ⊗ coev_W)`.
    pub fn partial_trace_right(&self, u: &GradedObject, w: &GradedObject) -> Result<Self> {
        let uw = u.tensor(w);
        self.check_endomorphism_of(&uw)?;
        let ws = w.dual();
        let id_u = GradedMorphism::identity(u);
        let step1 = id_u.tensor(&coev(w));
        let step2 = self.tensor(&GradedMorphism::identity(&ws));
        let step3 = id_u.tensor(&ev_prime(w));
        step3.compose(&step2)?.compose(&step1)
    }

    /// Left partial trace over the first tensor factor `u`:
    /// `(ev_U ⊗ id_W)(id_{U*} ⊗ f)(coev'_U ⊗ id_W)`.
    pub fn partial_trace_left(&self, u: &GradedObject, w: &GradedObject) -> Result<Self> {
        let uw = u.tensor(w);
        self.check_endomorphism_of(&uw)?;
        let us = u.dual();
        let id_w = GradedMorphism::identity(w);
        let step1 = coev_prime(u).tensor(&id_w);
        let step2 = GradedMorphism::identity(&us).tensor(self);
        let step3 = ev(u).tensor(&id_w);
        step3.compose(&step2)?.compose(&step1)
    }

    fn check_endomorphism_of(&self, obj: &GradedObject) -> Result<()> {
        if self.source.underlying() != obj.underlying()
            || self.target.underlying() != obj.underlying()
        {
            return Err(Error::Grading(format!(
                "expected an endomorphism of {obj}, found {} -> {}",
                self.source, self.target
            )));
        }
        Ok(())
    }

    /// Forgets the idempotents on both ends, keeping the body.
    pub fn on_underlying(&self) -> Self {
        Self {
            source: self.source.underlying(),
            target: self.target.underlying(),
            body: self.body.clone(),
        }
    }
}

impl fmt::Display for GradedMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.body)
    }
}

fn plain(source: GradedObject, target: GradedObject, body: Morphism<QLaurent>) -> GradedMorphism {
    GradedMorphism::new(source, target, body).expect("degree-preserving by construction")
}

/// `c_{V,W} = q^{deg V · deg W} β_{|V|,|W|}`.
pub fn graded_braiding(v: &GradedObject, w: &GradedObject) -> GradedMorphism {
    let q = QLaurent::q_pow(exponent(v.degree() * w.degree()));
    let beta = Morphism::<QLaurent>::permutation(&block_transposition(v.strands(), w.strands()));
    let body = beta.scale(&q);
    sandwich(v.tensor(w), w.tensor(v), body)
}

/// `c_{W,V}^{-1} = q^{-deg V · deg W} β_{|V|,|W|}: V ⊗ W → W ⊗ V`.
pub fn graded_braiding_inverse(v: &GradedObject, w: &GradedObject) -> GradedMorphism {
    let q = QLaurent::q_pow(exponent(-v.degree() * w.degree()));
    let beta = Morphism::<QLaurent>::permutation(&block_transposition(v.strands(), w.strands()));
    sandwich(v.tensor(w), w.tensor(v), beta.scale(&q))
}

/// `θ_V = q^{deg V²} id`.
pub fn graded_twist(v: &GradedObject) -> GradedMorphism {
    let q = QLaurent::q_pow(exponent(v.degree() * v.degree()));
    GradedMorphism::identity(v).scale(&q)
}

/// `ev_V: V* ⊗ V → 1`, the nested cap.
pub fn ev(v: &GradedObject) -> GradedMorphism {
    let body = structure_maps::<QLaurent>(v.strands()).ev;
    sandwich(v.dual().tensor(v), GradedObject::unit(), body)
}

/// `coev_V: 1 → V ⊗ V*`, the nested cup.
pub fn coev(v: &GradedObject) -> GradedMorphism {
    let body = structure_maps::<QLaurent>(v.strands()).coev;
    sandwich(GradedObject::unit(), v.tensor(&v.dual()), body)
}

/// `ev'_V = ev_V ∘ c_{V,V*} ∘ (θ_V ⊗ id_{V*})`, computed from its
/// definition.
pub fn ev_prime(v: &GradedObject) -> GradedMorphism {
    let vs = v.dual();
    let twist = graded_twist(v).tensor(&GradedMorphism::identity(&vs));
    let c = graded_braiding(v, &vs);
    ev(v)
        .compose(&c)
        .and_then(|x| x.compose(&twist))
        .expect("ends match")
}

/// `coev'_V = (id_{V*} ⊗ θ_V) ∘ c_{V,V*} ∘ coev_V`, computed from its
/// definition.
pub fn coev_prime(v: &GradedObject) -> GradedMorphism {
    let vs = v.dual();
    let twist = GradedMorphism::identity(&vs).tensor(&graded_twist(v));
    let c = graded_braiding(v, &vs);
    twist
        .compose(&c)
        .and_then(|x| x.compose(&coev(v)))
        .expect("ends match")
}

/// Cuts `body` down by the idempotents on either end.
fn sandwich(
    source: GradedObject,
    target: GradedObject,
    body: Morphism<QLaurent>,
) -> GradedMorphism {
    let body = match source.idempotent.is_some() || target.idempotent.is_some() {
        false => body,
        true => target
            .identity_body()
            .compose(&body)
            .and_then(|x| x.compose(&source.identity_body()))
            .expect("arities match"),
    };
    plain(source, target, body)
}

fn exponent(e: i64) -> i32 {
    i32::try_from(e).expect("q exponent fits in i32")
}

/// How to remove `q` when degrading to `ℚ[t]` coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QHandling {
    /// Fail if any coefficient still involves `q`.
    Refuse,
    /// Substitute `q = q0`; `q0 = 1` gives the strict tensor functor.
    Specialize(Rational),
}

/// The degrading functor on morphisms: the same diagram combination.
pub fn degrade(f: &GradedMorphism) -> Morphism<QLaurent> {
    f.body.clone()
}

/// The degrading functor on objects: `[a, b] ↦ [a + b]` with the same
/// idempotent.
pub fn degrade_object(v: &GradedObject) -> (usize, Option<Morphism<TPoly>>) {
    (v.strands(), v.idempotent.clone())
}

/// Degrades to `ℚ[t]` coefficients, removing `q` as instructed.
pub fn degrade_to_tpoly(f: &GradedMorphism, q: &QHandling) -> Result<Morphism<TPoly>> {
    f.body.try_map_coeffs(|c| match q {
        QHandling::Refuse => c
            .as_tpoly()
            .ok_or_else(|| Error::SpecifyQHandling(c.to_string())),
        QHandling::Specialize(q0) => c.specialize_q(q0),
    })
}

/// `t_n` of an endomorphism of `M_{a,b} ⊗ W`, on the first `a + b`
/// strands, with `q` carried through linearly.
pub fn graded_mod_trace(h: &GradedMorphism, n: usize) -> Result<QLaurent> {
    mod_trace(&h.body, n)
}

/// Outcome of the exhaustive graded ambidexterity check on `M_{a,b}`.
#[derive(Clone, Debug, Default)]
pub struct GradedAmbReport {
    /// Diagrams of `P_{2n}` sandwiched into `End(V ⊗ V)`.
    pub diagrams: usize,
    /// Endomorphisms checked: each sandwiched diagram, alone and braided.
    pub generators: usize,
    /// Generators where `t(tr_L(h)) ≠ t(tr_R(h))`.
    pub failures: Vec<(String, QLaurent, QLaurent)>,
    /// Generators where degrading does not commute with a partial trace.
    pub functor_failures: Vec<String>,
}

impl GradedAmbReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.functor_failures.is_empty()
    }
}

/// For every `π ∈ P_{2n}`, `n = a + b`, takes `h = (s ⊗ s) π (s ⊗ s)` and
/// `c_{V,V} ∘ h` in `End(V ⊗ V)` with `V = M_{a,b}`, and checks that the
/// left and right graded partial traces have equal `t_n`, and that the
/// graded partial traces degrade to the ungraded ones.
pub fn verify_graded_ambidextrous(a: usize, b: usize) -> Result<GradedAmbReport> {
    let n = a + b;
    let v = GradedObject::m(a, b);
    let vv = v.tensor(&v);
    let braid = graded_braiding(&v, &v);
    let mut report = GradedAmbReport::default();
    for pi in enumerate_diagrams(2 * n, 2 * n, DEFAULT_CAP)? {
        report.diagrams += 1;
        let base = sandwich(vv.clone(), vv.clone(), Morphism::from_diagram(pi.clone()));
        for (label, h) in [
            (pi.to_string(), base.clone()),
            (format!("c*{pi}"), braid.compose(&base)?),
        ] {
            report.generators += 1;
            let right = h.partial_trace_right(&v, &v)?;
            let left = h.partial_trace_left(&v, &v)?;
            let tr = graded_mod_trace(&right, n)?;
            let tl = graded_mod_trace(&left, n)?;
            if tr != tl {
                report.failures.push((label.clone(), tl, tr));
            }
            let body = degrade(&h);
            if degrade(&right) != body.partial_trace(Side::Right, n)?
                || degrade(&left) != body.partial_trace(Side::Left, n)?
            {
                report.functor_failures.push(label);
            }
        }
    }
    Ok(report)
}

/// `q^e` times the identity on `V`.
pub fn q_scaled_identity(v: &GradedObject, e: i32) -> GradedMorphism {
    GradedMorphism::identity(v).scale(&QLaurent::q_pow(e))
}
