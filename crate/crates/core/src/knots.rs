//! Framed knots as Morse words, evaluated in the graded category.
//!
//! A word is read top to bottom, one event per line:
//!
//! ```text
//! cup i   # new strands at positions i, i+1
//! cap i   # closes strands i, i+1
//! x+ i    # strand i crosses over strand i+1
//! x- i    # the inverse crossing
//! ```
//!
//! Every strand is labelled `M_{a,b}`; strands running upward carry the dual
//! `M_{b,a}`. The closed evaluation is normalized by the modified trace.

use std::fmt;
use std::str::FromStr;

use crate::diagrams::UnionFind;
use crate::error::{Error, Result};
use crate::graded::{
    coev, coev_prime, ev, ev_prime, graded_braiding, graded_braiding_inverse, graded_mod_trace,
    GradedMorphism, GradedObject,
};
use crate::modtrace::project;
use crate::scalars::QLaurent;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EventKind {
    Cup,
    Cap,
    CrossPos,
    CrossNeg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TangleEvent {
    pub kind: EventKind,
    pub position: usize,
}

impl fmt::Display for TangleEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            EventKind::Cup => "cup",
            EventKind::Cap => "cap",
            EventKind::CrossPos => "x+",
            EventKind::CrossNeg => "x-",
        };
        write!(f, "{name} {}", self.position)
    }
}

/// Direction of a strand: down carries `V`, up carries `V*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Down,
    Up,
}

/// A validated closed, single-component Morse word with its strand
/// orientations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangleWord {
    events: Vec<TangleEvent>,
    /// Orientation of every strand just before each event, and after the
    /// last one.
    levels: Vec<Vec<Orientation>>,
}

impl TangleWord {
    pub fn new(events: Vec<TangleEvent>) -> Result<Self> {
        // each strand is (arc id, which end of the arc's cup it came from)
        let mut strands: Vec<(usize, bool)> = Vec::new();
        let mut arcs = 0usize;
        let mut caps: Vec<((usize, bool), (usize, bool))> = Vec::new();
        let mut history: Vec<Vec<(usize, bool)>> = Vec::new();
        for (k, e) in events.iter().enumerate() {
            history.push(strands.clone());
            let width = strands.len();
            let bad = |why: String| Error::Tangle(format!("event {} (`{e}`): {why}", k + 1));
            match e.kind {
                EventKind::Cup => {
                    if e.position > width {
                        return Err(bad(format!("position out of range for {width} strands")));
                    }
                    strands.splice(e.position..e.position, [(arcs, false), (arcs, true)]);
                    arcs += 1;
                }
                EventKind::Cap | EventKind::CrossPos | EventKind::CrossNeg => {
                    if e.position + 1 >= width {
                        return Err(bad(format!(
                            "position out of range: needs strands {} and {} of {width}",
                            e.position,
                            e.position + 1
                        )));
                    }
                    if e.kind == EventKind::Cap {
                        caps.push((strands[e.position], strands[e.position + 1]));
                        strands.drain(e.position..e.position + 2);
                    } else {
                        strands.swap(e.position, e.position + 1);
                    }
                }
            }
        }
        history.push(strands.clone());
        if !strands.is_empty() {
            return Err(Error::Tangle(format!(
                "word ends with {} open strands",
                strands.len()
            )));
        }
        if arcs == 0 {
            return Err(Error::Tangle("empty word".into()));
        }
        // orientation of cup k's left end is x_k, its right end the opposite;
        // a cap joins ends of opposite orientation
        let mut uf = UnionFind::new(arcs);
        let mut parity = vec![None::<bool>; arcs];
        parity[0] = Some(false);
        let mut joined = 1;
        let mut pending = caps.clone();
        while !pending.is_empty() {
            let before = pending.len();
            pending.retain(|&((a1, r1), (a2, r2))| {
                uf.union(a1 as u32, a2 as u32);
                // x_a1 ^ r1 != x_a2 ^ r2
                match (parity[a1], parity[a2]) {
                    (Some(p), None) => {
                        parity[a2] = Some(!(p ^ r1) ^ r2);
                        joined += 1;
                        false
                    }
                    (None, Some(p)) => {
                        parity[a1] = Some(!(p ^ r2) ^ r1);
                        joined += 1;
                        false
                    }
                    (Some(_), Some(_)) => false,
                    (None, None) => true,
                }
            });
            if pending.len() == before {
                break;
            }
        }
        let components = (0..arcs as u32).filter(|&x| uf.find(x) == x).count();
        if components != 1 || joined != arcs {
            return Err(Error::Tangle(format!(
                "word closes up into {components} components; only knots are supported"
            )));
        }
        let orient = |(arc, right): (usize, bool)| {
            if parity[arc].unwrap() ^ right {
                Orientation::Up
            } else {
                Orientation::Down
            }
        };
        let levels = history
            .iter()
            .map(|level| level.iter().map(|&s| orient(s)).collect())
            .collect();
        Ok(Self { events, levels })
    }

    pub fn events(&self) -> &[TangleEvent] {
        &self.events
    }

    /// Orientations of the strands before event `k`.
    pub fn level(&self, k: usize) -> &[Orientation] {
        &self.levels[k]
    }

    /// Signed count of crossings under blackboard framing: a crossing
    /// counts `+1` or `-1` by its handedness, and reversing one strand of a
    /// crossing flips the sign.
    pub fn writhe(&self) -> i64 {
        self.events
            .iter()
            .enumerate()
            .filter_map(|(k, e)| {
                let sign = match e.kind {
                    EventKind::CrossPos => 1,
                    EventKind::CrossNeg => -1,
                    _ => return None,
                };
                let level = &self.levels[k];
                let parallel = level[e.position] == level[e.position + 1];
                Some(if parallel { sign } else { -sign })
            })
            .sum()
    }

    /// Number of crossing events, ignoring sign.
    pub fn crossings(&self) -> usize {
        self.events
            .iter()
            .filter(|e| matches!(e.kind, EventKind::CrossPos | EventKind::CrossNeg))
            .count()
    }
}

impl fmt::Display for TangleWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.events {
            writeln!(f, "{e}")?;
        }
        Ok(())
    }
}

/// Parses one event per line or per `/`-separated piece; `#` starts a
/// comment.
pub fn parse_tangle(text: &str) -> Result<TangleWord> {
    let mut events = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        for piece in line.split('/') {
            let mut words = piece.split_whitespace();
            let Some(head) = words.next() else { continue };
            let bad = |why: &str| {
                Error::Tangle(format!("line {}: {why}: `{}`", lineno + 1, piece.trim()))
            };
            let kind = match head {
                "cup" => EventKind::Cup,
                "cap" => EventKind::Cap,
                "x+" => EventKind::CrossPos,
                "x-" => EventKind::CrossNeg,
                _ => return Err(bad("unknown event")),
            };
            let position = words
                .next()
                .ok_or_else(|| bad("missing position"))?
                .parse::<usize>()
                .map_err(|_| bad("position must be a nonnegative integer"))?;
            if words.next().is_some() {
                return Err(bad("trailing input"));
            }
            events.push(TangleEvent { kind, position });
        }
    }
    TangleWord::new(events)
}

impl FromStr for TangleWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_tangle(s)
    }
}

/// Warning attached to labels whose invariant is trivially one.
pub fn label_warning(a: usize, b: usize) -> Option<String> {
    (a == b).then(|| format!("label ({a},{b}) has degree zero; the invariant is identically 1"))
}

fn strand_object(o: Orientation, a: usize, b: usize) -> GradedObject {
    match o {
        Orientation::Down => GradedObject::new(a, b),
        Orientation::Up => GradedObject::new(b, a),
    }
}

fn level_object(level: &[Orientation], a: usize, b: usize) -> GradedObject {
    level.iter().fold(GradedObject::unit(), |acc, &o| {
        acc.tensor(&strand_object(o, a, b))
    })
}

fn identity_on(level: &[Orientation], a: usize, b: usize) -> GradedMorphism {
    GradedMorphism::identity(&level_object(level, a, b))
}

/// The graded morphism of a single event, on the full width of its level.
fn event_morphism(word: &TangleWord, k: usize, a: usize, b: usize) -> GradedMorphism {
    let e = word.events[k];
    let before = word.level(k);
    let after = word.level(k + 1);
    let v = GradedObject::new(a, b);
    let (left, piece, right) = match e.kind {
        EventKind::Cup => {
            let piece = match after[e.position] {
                Orientation::Down => coev(&v),
                Orientation::Up => coev_prime(&v),
            };
            (&before[..e.position], piece, &before[e.position..])
        }
        EventKind::Cap => {
            let piece = match before[e.position] {
                Orientation::Up => ev(&v),
                Orientation::Down => ev_prime(&v),
            };
            (&before[..e.position], piece, &before[e.position + 2..])
        }
        EventKind::CrossPos | EventKind::CrossNeg => {
            let x = strand_object(before[e.position], a, b);
            let y = strand_object(before[e.position + 1], a, b);
            let piece = if e.kind == EventKind::CrossPos {
                graded_braiding(&x, &y)
            } else {
                graded_braiding_inverse(&x, &y)
            };
            (&before[..e.position], piece, &before[e.position + 2..])
        }
    };
    identity_on(left, a, b)
        .tensor(&piece)
        .tensor(&identity_on(right, a, b))
}

/// Evaluates the knot with every strand labelled `M_{a,b}`.
///
/// All events but the final cap are composed into `u: 1 → X ⊗ X*`. Bending
/// the right leg back up gives `φ ∈ End(X)` whose right closure is the knot;
/// the idempotents on the strands slide together into `s_n φ s_n`, and the
/// result is its modified trace.
pub fn evaluate_knot(word: &TangleWord, a: usize, b: usize) -> Result<QLaurent> {
    let n = a + b;
    if n == 0 {
        return Err(Error::InvalidArgument(
            "label (0,0) is the unit object; choose a + b >= 1".into(),
        ));
    }
    let events = word.events();
    let last = events.len() - 1;
    debug_assert_eq!(events[last].kind, EventKind::Cap);
    let mut u = GradedMorphism::identity(&GradedObject::unit());
    for k in 0..last {
        u = event_morphism(word, k, a, b).compose(&u)?;
    }
    let level = word.level(last);
    let x = strand_object(level[0], a, b);
    let y = strand_object(level[1], a, b);
    let z = y.dual();
    let bend = match level[1] {
        Orientation::Up => ev(&strand_object(Orientation::Down, a, b)),
        Orientation::Down => ev_prime(&strand_object(Orientation::Down, a, b)),
    };
    let phi = GradedMorphism::identity(&x)
        .tensor(&bend)
        .compose(&u.tensor(&GradedMorphism::identity(&z)))?;
    let sandwiched = project(phi.body(), n)?;
    graded_mod_trace(&GradedMorphism::new(x.clone(), x, sandwiched)?, n)
}

/// The expected value `q^{(a-b)² ω}`.
pub fn writhe_prediction(word: &TangleWord, a: usize, b: usize) -> QLaurent {
    let d = a as i64 - b as i64;
    QLaurent::q_pow(i32::try_from(d * d * word.writhe()).expect("exponent fits in i32"))
}

/// Named words used by tests, benches and the CLI.
pub mod corpus {

    pub const UNKNOT: &str = "cup 0\ncap 0\n";
    pub const TREFOIL_RIGHT: &str = "cup 0\ncup 1\nx+ 0\nx+ 0\nx+ 0\ncap 1\ncap 0\n";
    pub const TREFOIL_LEFT: &str = "cup 0\ncup 1\nx- 0\nx- 0\nx- 0\ncap 1\ncap 0\n";
    pub const FIGURE_EIGHT: &str =
        "cup 0\ncup 1\ncup 2\nx+ 0\nx- 1\nx+ 0\nx- 1\ncap 2\ncap 1\ncap 0\n";

    /// A curl on strand `i`: `cup i+1 / x± i / cap i+1`.
    pub fn kink_subword(i: usize, positive: bool) -> String {
        let x = if positive { "x+" } else { "x-" };
        format!("cup {}\n{x} {i}\ncap {}\n", i + 1, i + 1)
    }

    /// The unknot with `k` curls, positive or negative by the sign of `k`.
    pub fn kinked_unknot(k: i64) -> String {
        let mut w = String::from("cup 0\n");
        for _ in 0..k.unsigned_abs() {
            w.push_str(&kink_subword(0, k > 0));
        }
        w.push_str("cap 0\n");
        w
    }

    /// `(name, word text)` for every corpus entry.
    pub fn all() -> Vec<(String, String)> {
        let mut out = vec![("unknot".to_string(), UNKNOT.to_string())];
        for k in [1i64, -1, 2, -2, 3, -3] {
            out.push((format!("kinks{k:+}"), kinked_unknot(k)));
        }
        out.push(("trefoil_right".into(), TREFOIL_RIGHT.into()));
        out.push(("trefoil_left".into(), TREFOIL_LEFT.into()));
        out.push(("figure_eight".into(), FIGURE_EIGHT.into()));
        out.push((
            "trefoil_with_kink".into(),
            format!(
                "cup 0\ncup 1\nx+ 0\nx+ 0\nx+ 0\ncap 1\n{}cap 0\n",
                kink_subword(0, true)
            ),
        ));
        out
    }
}
