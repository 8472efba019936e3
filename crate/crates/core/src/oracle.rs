//! The action of partition diagrams on tensor powers of `ℚ^{t0}`, built by
//! brute-force label enumeration and used to cross-check the diagram
//! calculus against matrix algebra.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::diagrams::PartitionDiagram;
use crate::error::{Error, Result};
use crate::linalg;
use crate::morphisms::Morphism;
use crate::scalars::{Rational, TPoly};

/// Default bound on the number of vertex labelings scanned per diagram.
pub const DEFAULT_ORACLE_CAP: u128 = 1_000_000;

/// A matrix over ℚ holding only its nonzero entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries.insert((i, i), Rational::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> Rational {
        self.entries
            .get(&(row, col))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn nonzeros(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    fn add_entry(&mut self, row: usize, col: usize, v: Rational) {
        if v.is_zero() {
            return;
        }
        let slot = self
            .entries
            .entry((row, col))
            .or_insert_with(Rational::zero);
        *slot += v;
        if slot.is_zero() {
            self.entries.remove(&(row, col));
        }
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch"
        );
        let mut out = self.clone();
        for (r, c, v) in other.entries() {
            out.add_entry(r, c, v.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> SparseMatrix {
        if c.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// The matrix product `self · other`.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut by_row: Vec<Vec<(usize, &Rational)>> = vec![Vec::new(); other.rows];
        for (r, c, v) in other.entries() {
            by_row[r].push((c, v));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for (r, k, a) in self.entries() {
            for &(c, b) in &by_row[k] {
                out.add_entry(r, c, a * b);
            }
        }
        out
    }

    /// The Kronecker product, `self` indexing the most significant digit.
    pub fn kron(&self, other: &SparseMatrix) -> SparseMatrix {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for (r1, c1, a) in self.entries() {
            for (r2, c2, b) in other.entries() {
                out.entries
                    .insert((r1 * other.rows + r2, c1 * other.cols + c2), a * b);
            }
        }
        out
    }

    pub fn trace(&self) -> Rational {
        self.entries
            .iter()
            .filter(|((r, c), _)| r == c)
            .map(|(_, v)| v.clone())
            .sum()
    }

    /// Row-major dense entries.
    pub fn flatten(&self) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.rows * self.cols];
        for (r, c, x) in self.entries() {
            v[r * self.cols + c] = x.clone();
        }
        v
    }
}

impl fmt::Display for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

fn checked_pow(base: usize, exp: usize) -> Option<u128> {
    (0..exp).try_fold(1u128, |acc, _| acc.checked_mul(base as u128))
}

/// The matrix of `d: [a] → [b]` on `(ℚ^{t0})^{⊗a} → (ℚ^{t0})^{⊗b}`.
pub fn realize(d: &PartitionDiagram, t0: usize) -> Result<SparseMatrix> {
    realize_capped(d, t0, DEFAULT_ORACLE_CAP)
}

/// As [`realize`], failing if more than `cap` labelings would be scanned.
pub fn realize_capped(d: &PartitionDiagram, t0: usize, cap: u128) -> Result<SparseMatrix> {
    if t0 == 0 {
        return Err(Error::InvalidArgument("the oracle needs t0 >= 1".into()));
    }
    let (a, b) = (d.top(), d.bottom());
    let n = a + b;
    let labels = checked_pow(t0, n).unwrap_or(u128::MAX);
    if labels > cap {
        return Err(Error::OracleCap { labels, cap });
    }
    let rows = checked_pow(t0, b).unwrap() as usize;
    let cols = checked_pow(t0, a).unwrap() as usize;
    let blocks = d.labels();
    let mut out = SparseMatrix::zeros(rows, cols);
    let mut word = vec![0usize; n];
    let mut seen = vec![usize::MAX; d.block_count()];
    loop {
        seen.iter_mut().for_each(|s| *s = usize::MAX);
        let consistent = word.iter().zip(blocks).all(|(&x, &blk)| {
            let s = &mut seen[blk as usize];
            if *s == usize::MAX {
                *s = x;
            }
            *s == x
        });
        if consistent {
            let col = word[..a].iter().fold(0, |acc, &x| acc * t0 + x);
            let row = word[a..].iter().fold(0, |acc, &x| acc * t0 + x);
            out.entries.insert((row, col), Rational::one());
        }
        // odometer over all labelings
        let mut k = n;
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            word[k] += 1;
            if word[k] < t0 {
                break;
            }
            word[k] = 0;
        }
    }
}

/// The matrix of a linear combination, coefficients evaluated at `t = t0`.
pub fn realize_morphism(f: &Morphism<TPoly>, t0: usize) -> Result<SparseMatrix> {
    let t = Rational::from_integer((t0 as i64).into());
    let rows = checked_pow(t0, f.target()).unwrap_or(u128::MAX) as usize;
    let cols = checked_pow(t0, f.source()).unwrap_or(u128::MAX) as usize;
    let mut out = SparseMatrix::zeros(rows, cols);
    for (d, c) in f.terms() {
        out = out.add(&realize(d, t0)?.scale(&c.eval(&t)));
    }
    Ok(out)
}

/// Which identity a mismatch violated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CheckKind {
    Composition,
    Tensor,
    Trace,
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckKind::Composition => "composition",
            CheckKind::Tensor => "tensor",
            CheckKind::Trace => "trace",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleMismatch {
    pub kind: CheckKind,
    pub f: PartitionDiagram,
    pub g: PartitionDiagram,
}

impl fmt::Display for OracleMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} check failed for f = {}, g = {}",
            self.kind, self.f, self.g
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OracleReport {
    pub t0: usize,
    pub pairs: usize,
    pub compositions: usize,
    pub tensors: usize,
    pub traces: usize,
    /// Sorted by pair order.
    pub mismatches: Vec<OracleMismatch>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn check_pair(
    f: &PartitionDiagram,
    g: &PartitionDiagram,
    t0: usize,
) -> Result<(usize, usize, usize, Vec<OracleMismatch>)> {
    let t = Rational::from_integer((t0 as i64).into());
    let mf = realize(f, t0)?;
    let mg = realize(g, t0)?;
    let (mut comps, mut tensors, mut traces) = (0, 0, 0);
    let mut bad = Vec::new();
    let mut fail = |kind| {
        bad.push(OracleMismatch {
            kind,
            f: f.clone(),
            g: g.clone(),
        })
    };
    let fm = Morphism::<TPoly>::from_diagram(f.clone());
    let gm = Morphism::<TPoly>::from_diagram(g.clone());
    if g.bottom() == f.top() {
        comps += 1;
        let composite = realize_morphism(&fm.compose(&gm)?, t0)?;
        if composite != mf.mul(&mg) {
            fail(CheckKind::Composition);
        }
    }
    tensors += 1;
    if realize(&f.tensor(g), t0)? != mf.kron(&mg) {
        fail(CheckKind::Tensor);
    }
    for (m, matrix) in [(&fm, &mf), (&gm, &mg)] {
        if m.source() == m.target() {
            traces += 1;
            if matrix.trace() != m.categorical_trace()?.eval(&t) {
                fail(CheckKind::Trace);
            }
        }
    }
    Ok((comps, tensors, traces, bad))
}

/// Checks `ρ(f ∘ g) = ρ(f) ρ(g)`, `ρ(f ⊗ g) = ρ(f) ⊗ ρ(g)` and
/// `tr ρ(f) = Tr(f)|_{t = t0}` on every pair; `f ∘ g` is checked when
/// the arities allow.
pub fn check_homomorphism(
    pairs: &[(PartitionDiagram, PartitionDiagram)],
    t0: usize,
) -> Result<OracleReport> {
    let results: Vec<_> = pairs
        .par_iter()
        .map(|(f, g)| check_pair(f, g, t0))
        .collect::<Result<_>>()?;
    let mut report = OracleReport {
        t0,
        pairs: pairs.len(),
        ..Default::default()
    };
    for (c, x, tr, bad) in results {
        report.compositions += c;
        report.tensors += x;
        report.traces += tr;
        report.mismatches.extend(bad);
    }
    Ok(report)
}

/// Rank of the realized matrices, flattened to vectors.
pub fn realization_rank(diagrams: &[PartitionDiagram], t0: usize) -> Result<usize> {
    let rows: Vec<Vec<Rational>> = diagrams
        .iter()
        .map(|d| realize(d, t0).map(|m| m.flatten()))
        .collect::<Result<_>>()?;
    let ncols = rows.first().map_or(0, Vec::len);
    Ok(linalg::rank(&rows, ncols))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::enumerate_diagrams;
    use crate::modtrace::antisymmetrizer;
    use crate::scalars::int;

    fn pd(s: &str) -> PartitionDiagram {
        s.parse().unwrap()
    }

    #[test]
    fn small_realizations() {
        assert_eq!(
            realize(&PartitionDiagram::identity(1), 3).unwrap(),
            SparseMatrix::identity(3)
        );
        let x = realize(&PartitionDiagram::x(1), 3).unwrap();
        assert_eq!(x.nonzeros(), 9);
        let ev = realize(&PartitionDiagram::nested_cap(1), 3).unwrap();
        assert_eq!((ev.rows(), ev.cols(), ev.nonzeros()), (1, 9, 3));
        assert_eq!(x.mul(&x), x.scale(&int(3)));
    }

    #[test]
    fn antisymmetrizer_trace() {
        let s2 = antisymmetrizer::<TPoly>(2);
        assert_eq!(realize_morphism(&s2, 3).unwrap().trace(), int(3));
    }

    #[test]
    fn kronecker_structure() {
        let d = PartitionDiagram::identity(1).tensor(&PartitionDiagram::x(1));
        let expected =
            SparseMatrix::identity(2).kron(&realize(&PartitionDiagram::x(1), 2).unwrap());
        assert_eq!(realize(&d, 2).unwrap(), expected);
        assert_eq!(realize(&pd("{1,2'}{2,1'}"), 2).unwrap().trace(), int(2));
    }

    #[test]
    fn cap_is_enforced() {
        let d = PartitionDiagram::identity(10);
        assert!(matches!(realize(&d, 3), Err(Error::OracleCap { .. })));
        assert!(realize(&d, 0).is_err());
    }

    #[test]
    fn p2_is_independent_at_four() {
        let all: Vec<_> = enumerate_diagrams(2, 2, 14).unwrap().collect();
        assert_eq!(realization_rank(&all, 4).unwrap(), 15);
        // at t0 = 1 every diagram acts as the same 1×1 matrix
        assert_eq!(realization_rank(&all, 1).unwrap(), 1);
    }
}
