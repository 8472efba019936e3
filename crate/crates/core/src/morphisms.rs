//! Linear combinations of partition diagrams: morphisms of `Rep(S_t)`.
//!
//! `f.compose(&g)` is `f ∘ g`, so `g` is drawn on top of `f`. Every diagram
//! product is scaled by `t` to the number of closed middle loops.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::diagrams::{enumerate_diagrams, PartitionDiagram, Side, DEFAULT_CAP};
use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::scalars::{Assignment, Coeff, Rational, TPoly};

/// A morphism `a → b` with coefficients in `S`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Morphism<S = TPoly> {
    source: usize,
    target: usize,
    terms: BTreeMap<PartitionDiagram, S>,
}

/// Powers `t^0 .. t^max`, built once per bilinear loop.
pub(crate) struct TPowers<S> {
    powers: Vec<S>,
}

impl<S: Coeff> TPowers<S> {
    pub(crate) fn new() -> Self {
        Self {
            powers: vec![S::one()],
        }
    }

    pub(crate) fn get(&mut self, k: u32) -> &S {
        while self.powers.len() <= k as usize {
            let next = self.powers.last().unwrap().mul_ref(&S::t_pow(1));
            self.powers.push(next);
        }
        &self.powers[k as usize]
    }
}

impl<S: Coeff> Morphism<S> {
    pub fn zero(source: usize, target: usize) -> Self {
        Self {
            source,
            target,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_diagram(d: PartitionDiagram) -> Self {
        Self::term(d, S::one())
    }

    pub fn term(d: PartitionDiagram, c: S) -> Self {
        let mut m = Self::zero(d.top(), d.bottom());
        m.add_term(d, c);
        m
    }

    /// Sums the given terms, checking every diagram against `source → target`.
    pub fn from_terms(
        source: usize,
        target: usize,
        terms: impl IntoIterator<Item = (PartitionDiagram, S)>,
    ) -> Result<Self> {
        let mut m = Self::zero(source, target);
        for (d, c) in terms {
            m.check_arities(&d)?;
            m.add_term(d, c);
        }
        Ok(m)
    }

    pub fn identity(n: usize) -> Self {
        Self::from_diagram(PartitionDiagram::identity(n))
    }

    pub fn permutation(sigma: &Perm) -> Self {
        Self::from_diagram(PartitionDiagram::permutation(sigma))
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn is_square(&self) -> bool {
        self.source == self.target
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in diagram order.
    pub fn terms(&self) -> impl Iterator<Item = (&PartitionDiagram, &S)> {
        self.terms.iter()
    }

    pub fn coeff(&self, d: &PartitionDiagram) -> S {
        self.terms.get(d).cloned().unwrap_or_else(S::zero)
    }

    fn check_arities(&self, d: &PartitionDiagram) -> Result<()> {
        if d.top() != self.source {
            return Err(Error::ArityMismatch {
                expected: self.source,
                found: d.top(),
            });
        }
        if d.bottom() != self.target {
            return Err(Error::ArityMismatch {
                expected: self.target,
                found: d.bottom(),
            });
        }
        Ok(())
    }

    /// Adds `c·d`. Panics if `d` has the wrong arities.
    pub fn add_term(&mut self, d: PartitionDiagram, c: S) {
        assert!(
            d.top() == self.source && d.bottom() == self.target,
            "diagram {d:?} does not fit {} -> {}",
            self.source,
            self.target
        );
        if c.is_zero() {
            return;
        }
        match self.terms.entry(d) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                e.get_mut().add_ref(&c);
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_arities(other)?;
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(d.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    fn check_same_arities(&self, other: &Self) -> Result<()> {
        if self.source != other.source {
            return Err(Error::ArityMismatch {
                expected: self.source,
                found: other.source,
            });
        }
        if self.target != other.target {
            return Err(Error::ArityMismatch {
                expected: self.target,
                found: other.target,
            });
        }
        Ok(())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg_ref())
    }

    pub fn scale(&self, s: &S) -> Self {
        if s.is_zero() {
            return Self::zero(self.source, self.target);
        }
        self.map_coeffs(|c| c.mul_ref(s))
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        self.map_coeffs(|c| c.scale(r))
    }

    /// Applies `f` to every coefficient, dropping terms that become zero.
    pub fn map_coeffs<T: Coeff>(&self, f: impl Fn(&S) -> T) -> Morphism<T> {
        let mut out = Morphism::zero(self.source, self.target);
        for (d, c) in &self.terms {
            out.add_term(d.clone(), f(c));
        }
        out
    }

    /// Fallible variant of [`map_coeffs`](Self::map_coeffs).
    pub fn try_map_coeffs<T: Coeff>(&self, f: impl Fn(&S) -> Result<T>) -> Result<Morphism<T>> {
        let mut out = Morphism::zero(self.source, self.target);
        for (d, c) in &self.terms {
            out.add_term(d.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Specializes every coefficient to a rational number.
    pub fn evaluate(&self, assignment: &Assignment) -> Result<Morphism<TPoly>> {
        self.try_map_coeffs(|c| c.evaluate(assignment).map(TPoly::constant))
    }

    /// `self ∘ g`: `g` first, then `self`.
    pub fn compose(&self, g: &Morphism<S>) -> Result<Self> {
        if g.target != self.source {
            return Err(Error::ArityMismatch {
                expected: self.source,
                found: g.target,
            });
        }
        let mut out = Self::zero(g.source, self.target);
        let mut powers = TPowers::new();
        for (dg, cg) in &g.terms {
            for (df, cf) in &self.terms {
                let (d, loops) = dg.compose(df)?;
                let c = cg.mul_ref(cf);
                let c = if loops == 0 {
                    c
                } else {
                    c.mul_ref(powers.get(loops))
                };
                out.add_term(d, c);
            }
        }
        Ok(out)
    }

    /// Horizontal juxtaposition, `other` on the right.
    pub fn tensor(&self, other: &Morphism<S>) -> Self {
        let mut out = Self::zero(self.source + other.source, self.target + other.target);
        for (d, c) in &self.terms {
            for (e, k) in &other.terms {
                out.add_term(d.tensor(e), c.mul_ref(k));
            }
        }
        out
    }

    /// Exchanges source and target diagram-wise.
    pub fn flip(&self) -> Self {
        let mut out = Self::zero(self.target, self.source);
        for (d, c) in &self.terms {
            out.add_term(d.flip(), c.clone());
        }
        out
    }

    /// Closes `strands` strands on the given side.
    pub fn partial_trace(&self, side: Side, strands: usize) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                top: self.source,
                bottom: self.target,
            });
        }
        if strands > self.source {
            return Err(Error::TooManyStrands {
                strands,
                arity: self.source,
            });
        }
        let rest = self.source - strands;
        let mut out = Self::zero(rest, rest);
        let mut powers = TPowers::new();
        for (d, c) in &self.terms {
            let (e, loops) = d.trace_strands(side, strands)?;
            out.add_term(e, c.mul_ref(powers.get(loops)));
        }
        Ok(out)
    }

    /// The same partial trace computed categorically, by composing with
    /// evaluation and coevaluation morphisms:
    /// `tr_R(f) = (id ⊗ ev'_w)(f ⊗ id_w)(id ⊗ coev_w)` and
    /// `tr_L(f) = (ev_w ⊗ id)(id_w ⊗ f)(coev'_w ⊗ id)`.
    pub fn partial_trace_via_duality(&self, side: Side, strands: usize) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                top: self.source,
                bottom: self.target,
            });
        }
        if strands > self.source {
            return Err(Error::TooManyStrands {
                strands,
                arity: self.source,
            });
        }
        let rest = self.source - strands;
        let id_rest = Self::identity(rest);
        let id_w = Self::identity(strands);
        let maps = structure_maps::<S>(strands);
        match side {
            Side::Right => id_rest
                .tensor(&maps.ev_prime)
                .compose(&self.tensor(&id_w))?
                .compose(&id_rest.tensor(&maps.coev)),
            Side::Left => maps
                .ev
                .tensor(&id_rest)
                .compose(&id_w.tensor(self))?
                .compose(&maps.coev_prime.tensor(&id_rest)),
        }
    }

    /// The transpose `f*: [m] → [n]` of `f: [n] → [m]`,
    /// `(ev_m ⊗ id_n)(id_m ⊗ f ⊗ id_n)(id_m ⊗ coev_n)`.
    pub fn dual(&self) -> Self {
        let (n, m) = (self.source, self.target);
        let id_n = Self::identity(n);
        let id_m = Self::identity(m);
        structure_maps::<S>(m)
            .ev
            .tensor(&id_n)
            .compose(&id_m.tensor(self).tensor(&id_n))
            .and_then(|x| x.compose(&id_m.tensor(&structure_maps::<S>(n).coev)))
            .expect("arities match by construction")
    }

    /// Closes every strand and reads off the scalar.
    pub fn categorical_trace(&self) -> Result<S> {
        let closed = self.partial_trace(Side::Right, self.source)?;
        Ok(closed.coeff(&PartitionDiagram::empty()))
    }

    /// `e ∘ e = e` exactly in `ℚ[t]`; false for non-square morphisms.
    pub fn is_idempotent(&self) -> bool {
        self.is_square() && self.compose(self).is_ok_and(|sq| sq == *self)
    }

    /// `e ∘ e = e` after specializing both sides.
    pub fn is_idempotent_at(&self, assignment: &Assignment) -> Result<bool> {
        if !self.is_square() {
            return Ok(false);
        }
        Ok(self.compose(self)?.evaluate(assignment)? == self.evaluate(assignment)?)
    }
}

impl Morphism<TPoly> {
    /// True iff `tr(g ∘ h)` vanishes at `t0` for every diagram `h: b → a`.
    pub fn is_negligible(&self, t0: &Rational) -> Result<bool> {
        self.is_negligible_capped(t0, DEFAULT_CAP)
    }

    pub fn is_negligible_capped(&self, t0: &Rational, cap: usize) -> Result<bool> {
        let at = Assignment::t(t0.clone());
        let g = self.evaluate(&at)?;
        for h in enumerate_diagrams(self.target, self.source, cap)? {
            let tr = g.compose(&Morphism::from_diagram(h))?.categorical_trace()?;
            if !tr.evaluate(&at)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Evaluation and coevaluation for the self-dual object `[n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureMaps<S: Coeff = TPoly> {
    /// `[n] ⊗ [n] → 1`, nested pairing `T_i ~ T_{2n+1-i}`.
    pub ev: Morphism<S>,
    /// `1 → [n] ⊗ [n]`, the flip of `ev`.
    pub coev: Morphism<S>,
    /// `ev ∘ c_{[n],[n]} ∘ (θ ⊗ id)` with trivial twist.
    pub ev_prime: Morphism<S>,
    /// `(id ⊗ θ^{-1}) ∘ c_{[n],[n]} ∘ coev` with trivial twist.
    pub coev_prime: Morphism<S>,
}

pub fn structure_maps<S: Coeff>(n: usize) -> StructureMaps<S> {
    let ev = Morphism::from_diagram(PartitionDiagram::nested_cap(n));
    let coev = ev.flip();
    let swap = braiding::<S>(n, n);
    let ev_prime = ev.compose(&swap).expect("arities match");
    let coev_prime = swap.compose(&coev).expect("arities match");
    StructureMaps {
        ev,
        coev,
        ev_prime,
        coev_prime,
    }
}

/// `β_{n,m}: [n] ⊗ [m] → [m] ⊗ [n]`, moving the first `n` strands past the
/// last `m`.
pub fn braiding<S: Coeff>(n: usize, m: usize) -> Morphism<S> {
    Morphism::permutation(&block_transposition(n, m))
}

/// The permutation sending `i < n` to `m + i` and `n + j` to `j`.
pub fn block_transposition(n: usize, m: usize) -> Perm {
    let images = (0..n).map(|i| m + i).chain(0..m).collect();
    Perm::new(images).expect("block transposition is a bijection")
}

/// An object `([n], e)` of the Karoubi envelope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RetractObject<S: Coeff = TPoly> {
    arity: usize,
    idempotent: Morphism<S>,
}

impl<S: Coeff> RetractObject<S> {
    /// Checks that `e` is a square idempotent.
    pub fn new(idempotent: Morphism<S>) -> Result<Self> {
        if !idempotent.is_square() {
            return Err(Error::NotSquare {
                top: idempotent.source(),
                bottom: idempotent.target(),
            });
        }
        if !idempotent.is_idempotent() {
            return Err(Error::NotIdempotent);
        }
        Ok(Self {
            arity: idempotent.source(),
            idempotent,
        })
    }

    /// Checks that `e` is a square idempotent once specialized.
    pub fn new_at(idempotent: Morphism<S>, assignment: &Assignment) -> Result<Self> {
        if !idempotent.is_square() {
            return Err(Error::NotSquare {
                top: idempotent.source(),
                bottom: idempotent.target(),
            });
        }
        if !idempotent.is_idempotent_at(assignment)? {
            return Err(Error::NotIdempotent);
        }
        Ok(Self {
            arity: idempotent.source(),
            idempotent,
        })
    }

    /// `([n], s_n)`, idempotent by construction.
    pub fn antisymmetric(n: usize) -> Self {
        Self {
            arity: n,
            idempotent: crate::modtrace::antisymmetrizer(n),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn idempotent(&self) -> &Morphism<S> {
        &self.idempotent
    }

    /// Inclusion and projection are both `e`.
    pub fn inclusion(&self) -> &Morphism<S> {
        &self.idempotent
    }

    pub fn projection(&self) -> &Morphism<S> {
        &self.idempotent
    }
}

impl<S: Coeff> fmt::Display for Morphism<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "zero({},{})", self.source, self.target);
        }
        for (k, (d, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "{d}")?;
            } else {
                write!(f, "({c})*{d}")?;
            }
        }
        Ok(())
    }
}

impl<S: Coeff> fmt::Debug for Morphism<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Morphism[{}->{}]({self})", self.source, self.target)
    }
}

/// Parses `(c1)*d1 + (c2)*d2 + ...`, a bare diagram for coefficient one, or
/// `zero(a,b)`. Arities come from the diagrams.
impl<S: Coeff> FromStr for Morphism<S> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some(args) = text.strip_prefix("zero(").and_then(|r| r.strip_suffix(')')) {
            let (a, b) = args
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("bad zero morphism `{s}`")))?;
            let parse = |x: &str| {
                x.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad arity `{x}` in `{s}`")))
            };
            return Ok(Self::zero(parse(a)?, parse(b)?));
        }
        let mut terms = Vec::new();
        for piece in split_top_level(&text, '+') {
            let brace = top_level_find(piece, '{')
                .ok_or_else(|| Error::Parse(format!("term `{piece}` has no diagram")))?;
            let (coeff_text, diagram_text) = piece.split_at(brace);
            let d: PartitionDiagram = diagram_text.parse()?;
            let c = if coeff_text.is_empty() {
                S::one()
            } else {
                let c = coeff_text.strip_suffix('*').ok_or_else(|| {
                    Error::Parse(format!("expected `*` before diagram in `{piece}`"))
                })?;
                c.parse::<S>()?
            };
            terms.push((d, c));
        }
        let (a, b) = match terms.first() {
            Some((d, _)) => (d.top(), d.bottom()),
            None => return Err(Error::Parse(format!("empty morphism `{s}`"))),
        };
        Self::from_terms(a, b, terms)
    }
}

/// Splits on `sep` outside parentheses and braces.
fn split_top_level(text: &str, sep: char) -> Vec<&str> {
    let mut pieces = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' | '{' => depth += 1,
            ')' | '}' => depth -= 1,
            c if c == sep && depth == 0 => {
                pieces.push(&text[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    pieces.push(&text[start..]);
    pieces
}

fn top_level_find(text: &str, target: char) -> Option<usize> {
    let mut depth = 0i32;
    for (i, c) in text.char_indices() {
        match c {
            c if c == target && depth == 0 => return Some(i),
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
    }
    None
}
