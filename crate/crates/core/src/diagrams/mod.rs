//! Partition diagrams and their combinatorics.
//!
//! A diagram in `P_{a,b}` is a set partition of `a` top vertices and `b`
//! bottom vertices. Vertices are encoded as one integer range `[0, a+b)`,
//! top row first, and the partition is stored as a restricted growth string
//! over that range: `labels[v]` is the index of the block containing `v`,
//! with blocks numbered in order of their least vertex. That string is the
//! canonical form, so derived equality and hashing are partition equality.
//!
//! Composition follows the "down the page" convention: in
//! [`PartitionDiagram::compose`] the first diagram sits on top.

mod enumerate;
mod union_find;

pub use enumerate::{bell, enumerate_diagrams, enumerate_range, DiagramIter, DEFAULT_CAP};
pub(crate) use union_find::UnionFind;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Perm;

/// Largest supported vertex count `a + b`.
pub const MAX_VERTICES: usize = 255;

/// A vertex of a diagram, 0-based within its row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Vertex {
    Top(usize),
    Bottom(usize),
}

/// Which end of a square diagram a partial trace closes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartitionDiagram {
    top: usize,
    bottom: usize,
    labels: Vec<u8>,
}

/// Where a square diagram sits relative to `S_n ⊔ S_n^-`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum DiagramClass {
    /// Every block is `{T_i, B_σ(i)}`.
    Permutation(Perm),
    /// The diagram is `σ_i`: `T_i` and `B_σ(i)` are singletons, the rest
    /// follow `σ`. With one puncture `σ` is unique, since `σ(i)` must be the
    /// one bottom index not hit elsewhere.
    PuncturedPermutation {
        sigma: Perm,
        index: usize,
    },
    Other,
}

/// Left and right halves of a diagram in `P_{2n}` and, when both halves are
/// permutations, the diagram `π_{L-R}` recording how they are linked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Restrictions {
    pub left: PartitionDiagram,
    pub right: PartitionDiagram,
    pub left_right: Option<PartitionDiagram>,
}

impl PartitionDiagram {
    /// Builds the canonical diagram from any block labelling of the
    /// `top + bottom` vertices; equal labels mean the same block.
    pub fn from_labels<L: Copy + Eq + std::hash::Hash>(
        top: usize,
        bottom: usize,
        raw: &[L],
    ) -> Self {
        assert_eq!(
            raw.len(),
            top + bottom,
            "label count must equal vertex count"
        );
        assert!(top + bottom <= MAX_VERTICES, "diagram too large");
        let mut seen: Vec<L> = Vec::new();
        let labels = raw
            .iter()
            .map(|l| match seen.iter().position(|s| s == l) {
                Some(p) => p as u8,
                None => {
                    seen.push(*l);
                    (seen.len() - 1) as u8
                }
            })
            .collect();
        Self {
            top,
            bottom,
            labels,
        }
    }

    /// Trusted constructor for labels already in restricted-growth form.
    pub(crate) fn from_rgs(top: usize, bottom: usize, labels: Vec<u8>) -> Self {
        debug_assert!(is_rgs(&labels));
        Self {
            top,
            bottom,
            labels,
        }
    }

    /// Canonical diagram from a list of blocks, validating that the blocks
    /// partition the declared vertex set.
    pub fn canonicalize(top: usize, bottom: usize, blocks: &[Vec<Vertex>]) -> Result<Self> {
        if top + bottom > MAX_VERTICES {
            return Err(Error::NotAPartition(format!(
                "{} vertices exceeds the supported {MAX_VERTICES}",
                top + bottom
            )));
        }
        let mut owner: Vec<Option<usize>> = vec![None; top + bottom];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::NotAPartition("empty block".into()));
            }
            for &v in block {
                let idx = match v {
                    Vertex::Top(i) if i < top => i,
                    Vertex::Bottom(j) if j < bottom => top + j,
                    _ => {
                        return Err(Error::NotAPartition(format!(
                            "vertex {v:?} outside {top} -> {bottom}"
                        )))
                    }
                };
                if owner[idx].replace(b).is_some() {
                    return Err(Error::NotAPartition(format!("vertex {v:?} appears twice")));
                }
            }
        }
        let raw: Vec<usize> = owner
            .iter()
            .enumerate()
            .map(|(idx, o)| {
                o.ok_or_else(|| {
                    Error::NotAPartition(format!("vertex {:?} is not covered", vertex_of(top, idx)))
                })
            })
            .collect::<Result<_>>()?;
        Ok(Self::from_labels(top, bottom, &raw))
    }

    /// The unique diagram in `P_{0,0}`.
    pub fn empty() -> Self {
        Self {
            top: 0,
            bottom: 0,
            labels: Vec::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::permutation(&Perm::identity(n))
    }

    /// Every vertex in its own block.
    pub fn singletons(top: usize, bottom: usize) -> Self {
        Self::from_rgs(top, bottom, (0..(top + bottom) as u8).collect())
    }

    /// Blocks `{T_i, B_σ(i)}`.
    pub fn permutation(sigma: &Perm) -> Self {
        Self::sigma_subset(sigma, &[])
    }

    /// `σ_I`: the permutation diagram of `σ` with every edge at a top vertex
    /// in `removed` deleted.
    pub fn sigma_subset(sigma: &Perm, removed: &[usize]) -> Self {
        let n = sigma.len();
        let mut raw = vec![0usize; 2 * n];
        for i in 0..n {
            raw[i] = i;
            raw[n + sigma.apply(i)] = if removed.contains(&i) { n + i } else { i };
        }
        Self::from_labels(n, n, &raw)
    }

    /// `x_n`: the identity with the edge at the last top vertex removed.
    pub fn x(n: usize) -> Self {
        assert!(n > 0, "x_n needs n >= 1");
        Self::sigma_subset(&Perm::identity(n), &[n - 1])
    }

    /// Nested cap in `P_{2n,0}`: blocks `{T_i, T_{2n-1-i}}`.
    pub fn nested_cap(n: usize) -> Self {
        let raw: Vec<usize> = (0..2 * n).map(|i| i.min(2 * n - 1 - i)).collect();
        Self::from_labels(2 * n, 0, &raw)
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn is_square(&self) -> bool {
        self.top == self.bottom
    }

    /// Restricted growth string over the vertices, top row first.
    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn block_count(&self) -> usize {
        self.labels
            .iter()
            .map(|&l| l as usize + 1)
            .max()
            .unwrap_or(0)
    }

    /// Blocks ordered by least vertex, vertices sorted within each block.
    pub fn blocks(&self) -> Vec<Vec<Vertex>> {
        let mut blocks = vec![Vec::new(); self.block_count()];
        for (idx, &l) in self.labels.iter().enumerate() {
            blocks[l as usize].push(vertex_of(self.top, idx));
        }
        blocks
    }

    pub fn same_block(&self, u: Vertex, v: Vertex) -> bool {
        self.labels[self.index(u)] == self.labels[self.index(v)]
    }

    fn index(&self, v: Vertex) -> usize {
        match v {
            Vertex::Top(i) => {
                assert!(i < self.top);
                i
            }
            Vertex::Bottom(j) => {
                assert!(j < self.bottom);
                self.top + j
            }
        }
    }

    /// Stacks `lower` beneath `self`, returning the composite on the outer
    /// rows and the number of closed components made only of identified
    /// middle vertices. The caller scales by `t` to that power.
    pub fn compose(&self, lower: &PartitionDiagram) -> Result<(PartitionDiagram, u32)> {
        if self.bottom != lower.top {
            return Err(Error::ArityMismatch {
                expected: self.bottom,
                found: lower.top,
            });
        }
        let ku = self.block_count();
        let kl = lower.block_count();
        let mut uf = UnionFind::new(ku + kl);
        for j in 0..self.bottom {
            uf.union(
                self.labels[self.top + j] as u32,
                (ku + lower.labels[j] as usize) as u32,
            );
        }
        let outer: Vec<u32> = self.labels[..self.top]
            .iter()
            .map(|&l| l as u32)
            .chain(
                lower.labels[lower.top..]
                    .iter()
                    .map(|&l| (ku + l as usize) as u32),
            )
            .collect();
        Ok(close_components(&mut uf, self.top, lower.bottom, &outer))
    }

    /// Horizontal juxtaposition, `other` to the right of `self`.
    pub fn tensor(&self, other: &PartitionDiagram) -> PartitionDiagram {
        let shift = self.block_count();
        let mut raw: Vec<usize> = Vec::with_capacity(self.labels.len() + other.labels.len());
        raw.extend(self.labels[..self.top].iter().map(|&l| l as usize));
        raw.extend(
            other.labels[..other.top]
                .iter()
                .map(|&l| shift + l as usize),
        );
        raw.extend(self.labels[self.top..].iter().map(|&l| l as usize));
        raw.extend(
            other.labels[other.top..]
                .iter()
                .map(|&l| shift + l as usize),
        );
        Self::from_labels(self.top + other.top, self.bottom + other.bottom, &raw)
    }

    /// Exchanges the top and bottom rows.
    pub fn flip(&self) -> PartitionDiagram {
        let raw: Vec<u8> = self.labels[self.top..]
            .iter()
            .chain(&self.labels[..self.top])
            .copied()
            .collect();
        Self::from_labels(self.bottom, self.top, &raw)
    }

    /// Closes `strands` strands on one side of a square diagram by joining
    /// `T_i` to `B_i`, returning the remaining diagram and the number of
    /// components swallowed entirely by the closure.
    pub fn trace_strands(&self, side: Side, strands: usize) -> Result<(PartitionDiagram, u32)> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                top: self.top,
                bottom: self.bottom,
            });
        }
        let m = self.top;
        if strands > m {
            return Err(Error::TooManyStrands { strands, arity: m });
        }
        let traced = match side {
            Side::Left => 0..strands,
            Side::Right => m - strands..m,
        };
        let kept = match side {
            Side::Left => strands..m,
            Side::Right => 0..m - strands,
        };
        let mut uf = UnionFind::new(self.block_count());
        for i in traced {
            uf.union(self.labels[i] as u32, self.labels[m + i] as u32);
        }
        let outer: Vec<u32> = kept
            .clone()
            .map(|i| self.labels[i] as u32)
            .chain(kept.map(|i| self.labels[m + i] as u32))
            .collect();
        let rest = m - strands;
        Ok(close_components(&mut uf, rest, rest, &outer))
    }

    /// Induced partition on a subset of vertex indices, kept in order; the
    /// first `top` of them become the new top row.
    fn restrict(&self, indices: &[usize], top: usize) -> PartitionDiagram {
        let raw: Vec<u8> = indices.iter().map(|&i| self.labels[i]).collect();
        Self::from_labels(top, indices.len() - top, &raw)
    }

    /// Sorts a square diagram into permutations, punctured permutations and
    /// everything else.
    pub fn classify(&self) -> Result<DiagramClass> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                top: self.top,
                bottom: self.bottom,
            });
        }
        let n = self.top;
        let k = self.block_count();
        let mut tops = vec![0u8; k];
        let mut bottoms = vec![0u8; k];
        let mut top_of = vec![usize::MAX; k];
        let mut bottom_of = vec![usize::MAX; k];
        for i in 0..n {
            let l = self.labels[i] as usize;
            tops[l] += 1;
            top_of[l] = i;
            let l = self.labels[n + i] as usize;
            bottoms[l] += 1;
            bottom_of[l] = i;
        }
        let mut images = vec![usize::MAX; n];
        let mut lone_top = None;
        let mut lone_bottom = None;
        for b in 0..k {
            match (tops[b], bottoms[b]) {
                (1, 1) => images[top_of[b]] = bottom_of[b],
                (1, 0) if lone_top.is_none() => lone_top = Some(top_of[b]),
                (0, 1) if lone_bottom.is_none() => lone_bottom = Some(bottom_of[b]),
                _ => return Ok(DiagramClass::Other),
            }
        }
        match (lone_top, lone_bottom) {
            (None, None) => Ok(DiagramClass::Permutation(Perm::new(images)?)),
            (Some(i), Some(j)) => {
                images[i] = j;
                Ok(DiagramClass::PuncturedPermutation {
                    sigma: Perm::new(images)?,
                    index: i,
                })
            }
            _ => Ok(DiagramClass::Other),
        }
    }

    /// Splits `π ∈ P_{2n}` into `π_L`, `π_R` and, when both are
    /// permutations, `π_{L-R} = σ_I` where `I` holds the left indices whose
    /// block in `π` has size two and `σ(i) = j` whenever `T_i` and `T_{n+j}`
    /// share a block.
    pub fn restrictions(&self) -> Result<Restrictions> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                top: self.top,
                bottom: self.bottom,
            });
        }
        if !self.top.is_multiple_of(2) {
            return Err(Error::OddArity(self.top));
        }
        let m = self.top;
        let n = m / 2;
        let left_idx: Vec<usize> = (0..n).chain(m..m + n).collect();
        let right_idx: Vec<usize> = (n..m).chain(m + n..2 * m).collect();
        let left = self.restrict(&left_idx, n);
        let right = self.restrict(&right_idx, n);
        let both_perms = matches!(left.classify()?, DiagramClass::Permutation(_))
            && matches!(right.classify()?, DiagramClass::Permutation(_));
        let left_right = both_perms.then(|| {
            let mut images: Vec<Option<usize>> = vec![None; n];
            for (i, image) in images.iter_mut().enumerate() {
                *image = (0..n).find(|&j| self.labels[i] == self.labels[n + j]);
            }
            let removed: Vec<usize> = (0..n).filter(|&i| images[i].is_none()).collect();
            let mut unused = (0..n).filter(|j| !images.contains(&Some(*j)));
            let filled: Vec<usize> = images
                .iter()
                .map(|im| im.unwrap_or_else(|| unused.next().unwrap()))
                .collect();
            let sigma = Perm::new(filled).expect("linked tops form a partial bijection");
            PartitionDiagram::sigma_subset(&sigma, &removed)
        });
        Ok(Restrictions {
            left,
            right,
            left_right,
        })
    }

    /// Rebuilds `π ∈ P_{2n}` from permutation halves and the linking diagram
    /// `π_{L-R}`; the inverse of [`restrictions`](Self::restrictions) on its
    /// domain.
    pub fn reconstruct(
        left: &PartitionDiagram,
        right: &PartitionDiagram,
        left_right: &PartitionDiagram,
    ) -> Result<PartitionDiagram> {
        let n = left.top;
        let (alpha, beta) = match (left.classify()?, right.classify()?) {
            (DiagramClass::Permutation(a), DiagramClass::Permutation(b)) => (a, b),
            _ => {
                return Err(Error::InvalidArgument(
                    "both halves must be permutation diagrams".into(),
                ))
            }
        };
        if right.top != n || left_right.top != n || !left_right.is_square() {
            return Err(Error::ArityMismatch {
                expected: n,
                found: right.top.max(left_right.top),
            });
        }
        let m = 2 * n;
        // block ids: i for {T_i, B_α(i)}, n + j for {T_{n+j}, B_{n+β(j)}}
        let mut uf = UnionFind::new(m);
        for block in left_right.blocks() {
            match block.as_slice() {
                [Vertex::Top(i), Vertex::Bottom(j)] => {
                    uf.union(*i as u32, (n + j) as u32);
                }
                [_] => {}
                _ => {
                    return Err(Error::InvalidArgument(format!(
                        "linking diagram {left_right} is not a partial permutation"
                    )))
                }
            }
        }
        let mut raw = vec![0u32; 2 * m];
        for i in 0..n {
            raw[i] = uf.find(i as u32);
            raw[m + alpha.apply(i)] = uf.find(i as u32);
            raw[n + i] = uf.find((n + i) as u32);
            raw[m + n + beta.apply(i)] = uf.find((n + i) as u32);
        }
        Ok(Self::from_labels(m, m, &raw))
    }
}

/// Relabels the outer vertices by their union-find roots and counts the
/// components that no outer vertex reaches.
fn close_components(
    uf: &mut UnionFind,
    top: usize,
    bottom: usize,
    outer: &[u32],
) -> (PartitionDiagram, u32) {
    let mut touched = vec![false; uf.len()];
    let raw: Vec<u32> = outer
        .iter()
        .map(|&x| {
            let r = uf.find(x);
            touched[r as usize] = true;
            r
        })
        .collect();
    let mut loops = 0;
    for x in 0..uf.len() as u32 {
        if uf.find(x) == x && !touched[x as usize] {
            loops += 1;
        }
    }
    (PartitionDiagram::from_labels(top, bottom, &raw), loops)
}

fn vertex_of(top: usize, idx: usize) -> Vertex {
    if idx < top {
        Vertex::Top(idx)
    } else {
        Vertex::Bottom(idx - top)
    }
}

fn is_rgs(labels: &[u8]) -> bool {
    let mut next = 0u8;
    labels.iter().all(|&l| {
        if l < next {
            true
        } else if l == next {
            next += 1;
            true
        } else {
            false
        }
    })
}

impl fmt::Display for PartitionDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.labels.is_empty() {
            return write!(f, "{{}}");
        }
        for block in self.blocks() {
            write!(f, "{{")?;
            for (k, v) in block.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                match v {
                    Vertex::Top(i) => write!(f, "{}", i + 1)?,
                    Vertex::Bottom(j) => write!(f, "{}'", j + 1)?,
                }
            }
            write!(f, "}}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PartitionDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P[{}->{}]{}", self.top, self.bottom, self)
    }
}

/// Parses `{1,2'}{2,1'}`: top vertices as `1..a`, bottom as `1'..b'`.
/// Whitespace is ignored and `{}` is the empty diagram.
impl FromStr for PartitionDiagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if text == "{}" {
            return Ok(Self::empty());
        }
        let bad = |why: &str| Error::Parse(format!("{why} in diagram `{s}`"));
        let mut blocks = Vec::new();
        let mut rest = text.as_str();
        while !rest.is_empty() {
            let inner = rest.strip_prefix('{').ok_or_else(|| bad("expected `{`"))?;
            let close = inner.find('}').ok_or_else(|| bad("unclosed block"))?;
            let mut block = Vec::new();
            for tok in inner[..close].split(',') {
                let (num, primed) = match tok.strip_suffix('\'') {
                    Some(n) => (n, true),
                    None => (tok, false),
                };
                let k: usize = num.parse().map_err(|_| bad("bad vertex"))?;
                if k == 0 {
                    return Err(bad("vertices are numbered from 1"));
                }
                block.push(if primed {
                    Vertex::Bottom(k - 1)
                } else {
                    Vertex::Top(k - 1)
                });
            }
            blocks.push(block);
            rest = &inner[close + 1..];
        }
        if blocks.is_empty() {
            return Err(bad("no blocks"));
        }
        let top = max_index(&blocks, |v| matches!(v, Vertex::Top(_)));
        let bottom = max_index(&blocks, |v| matches!(v, Vertex::Bottom(_)));
        Self::canonicalize(top, bottom, &blocks)
    }
}

fn max_index(blocks: &[Vec<Vertex>], pick: impl Fn(&Vertex) -> bool) -> usize {
    blocks
        .iter()
        .flatten()
        .filter(|v| pick(v))
        .map(|v| match v {
            Vertex::Top(i) | Vertex::Bottom(i) => i + 1,
        })
        .max()
        .unwrap_or(0)
}

impl Serialize for PartitionDiagram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PartitionDiagram {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> PartitionDiagram {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_form_sorts_blocks_and_vertices() {
        let id = PartitionDiagram::canonicalize(1, 1, &[vec![Vertex::Bottom(0), Vertex::Top(0)]])
            .unwrap();
        assert_eq!(id, PartitionDiagram::identity(1));
        let swap = PartitionDiagram::canonicalize(
            2,
            2,
            &[
                vec![Vertex::Top(1), Vertex::Bottom(0)],
                vec![Vertex::Bottom(1), Vertex::Top(0)],
            ],
        )
        .unwrap();
        assert_eq!(swap.to_string(), "{1,2'}{2,1'}");
        let x1 =
            PartitionDiagram::canonicalize(1, 1, &[vec![Vertex::Top(0)], vec![Vertex::Bottom(0)]])
                .unwrap();
        assert_eq!(x1, PartitionDiagram::x(1));
        assert_ne!(x1, PartitionDiagram::identity(1));
    }

    #[test]
    fn canonicalize_rejects_non_partitions() {
        let overlap = PartitionDiagram::canonicalize(
            1,
            1,
            &[
                vec![Vertex::Top(0), Vertex::Bottom(0)],
                vec![Vertex::Top(0)],
            ],
        );
        assert!(matches!(overlap, Err(Error::NotAPartition(_))));
        let uncovered =
            PartitionDiagram::canonicalize(2, 1, &[vec![Vertex::Top(0), Vertex::Bottom(0)]]);
        assert!(matches!(uncovered, Err(Error::NotAPartition(_))));
        assert!("{1}{3}".parse::<PartitionDiagram>().is_err());
    }

    #[test]
    fn x1_squared_closes_one_loop() {
        let x1 = PartitionDiagram::x(1);
        assert_eq!(x1.compose(&x1).unwrap(), (x1.clone(), 1));
    }

    #[test]
    fn cap_over_cup_is_a_circle() {
        let cap = d("{1,2}");
        let cup = d("{1',2'}");
        assert_eq!((cap.top(), cap.bottom()), (2, 0));
        // cup on top, cap below: the two middle vertices close up
        assert_eq!(cup.compose(&cap).unwrap(), (PartitionDiagram::empty(), 1));
    }

    #[test]
    fn identity_is_neutral() {
        let f = d("{1,2,1'}{2'}");
        assert_eq!(
            PartitionDiagram::identity(2).compose(&f).unwrap(),
            (f.clone(), 0)
        );
        assert_eq!(f.compose(&PartitionDiagram::identity(2)).unwrap(), (f, 0));
    }

    #[test]
    fn compose_rejects_arity_mismatch() {
        let r = PartitionDiagram::identity(2).compose(&PartitionDiagram::identity(3));
        assert_eq!(
            r,
            Err(Error::ArityMismatch {
                expected: 2,
                found: 3
            })
        );
    }

    #[test]
    fn tensor_examples() {
        let id1 = PartitionDiagram::identity(1);
        assert_eq!(id1.tensor(&id1), PartitionDiagram::identity(2));
        assert_eq!(
            PartitionDiagram::x(1).tensor(&id1).to_string(),
            "{1}{2,2'}{1'}"
        );
        let f = d("{1,2'}{2}{1'}");
        assert_eq!(PartitionDiagram::empty().tensor(&f), f);
    }

    #[test]
    fn flip_examples() {
        assert_eq!(
            PartitionDiagram::identity(3).flip(),
            PartitionDiagram::identity(3)
        );
        assert_eq!(d("{1,2}").flip(), d("{1',2'}"));
        for sigma in Perm::all(3) {
            assert_eq!(
                PartitionDiagram::permutation(&sigma).flip(),
                PartitionDiagram::permutation(&sigma.inverse())
            );
        }
    }

    #[test]
    fn permutation_diagrams() {
        let cycle = Perm::from_one_based(&[2, 3, 1]).unwrap();
        assert_eq!(
            PartitionDiagram::permutation(&cycle).to_string(),
            "{1,2'}{2,3'}{3,1'}"
        );
        assert_eq!(
            PartitionDiagram::permutation(&Perm::transposition(2, 0, 1)).to_string(),
            "{1,2'}{2,1'}"
        );
        assert_eq!(
            PartitionDiagram::permutation(&cycle).classify().unwrap(),
            DiagramClass::Permutation(cycle)
        );
    }

    #[test]
    fn sigma_subset_examples() {
        assert_eq!(
            PartitionDiagram::sigma_subset(&Perm::identity(3), &[2]),
            PartitionDiagram::x(3)
        );
        let swap = Perm::transposition(2, 0, 1);
        assert_eq!(
            PartitionDiagram::sigma_subset(&swap, &[0]).to_string(),
            "{1}{2,1'}{2'}"
        );
        assert_eq!(
            PartitionDiagram::sigma_subset(&swap, &[]),
            PartitionDiagram::permutation(&swap)
        );
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            PartitionDiagram::x(1).classify().unwrap(),
            DiagramClass::PuncturedPermutation {
                sigma: Perm::identity(1),
                index: 0
            }
        );
        assert_eq!(d("{1,2,1',2'}").classify().unwrap(), DiagramClass::Other);
        assert!(matches!(
            d("{1,2}").classify(),
            Err(Error::NotSquare { top: 2, bottom: 0 })
        ));
        // punctured witness sends the lone top to the lone bottom
        let p = d("{1,1'}{2}{3,2'}{3'}");
        assert_eq!(
            p.classify().unwrap(),
            DiagramClass::PuncturedPermutation {
                sigma: Perm::from_one_based(&[1, 3, 2]).unwrap(),
                index: 1
            }
        );
    }

    #[test]
    fn restrictions_of_tensor_of_permutations() {
        let sigma = Perm::transposition(2, 0, 1);
        let tau = Perm::identity(2);
        let pi = PartitionDiagram::permutation(&sigma).tensor(&PartitionDiagram::permutation(&tau));
        let r = pi.restrictions().unwrap();
        assert_eq!(r.left, PartitionDiagram::permutation(&sigma));
        assert_eq!(r.right, PartitionDiagram::permutation(&tau));
        assert_eq!(r.left_right, Some(PartitionDiagram::singletons(2, 2)));
    }

    #[test]
    fn restrictions_of_hand_built_linked_diagram() {
        // n = 2: {T1,B1,T3,B3} joined, {T2,B2}, {T4,B4}
        let pi = d("{1,3,1',3'}{2,2'}{4,4'}");
        let r = pi.restrictions().unwrap();
        assert_eq!(r.left, PartitionDiagram::identity(2));
        assert_eq!(r.right, PartitionDiagram::identity(2));
        // T1 linked to T3 = T_{2+1}, so σ(1) = 1 and I = {2}
        let expected = PartitionDiagram::sigma_subset(&Perm::identity(2), &[1]);
        assert_eq!(r.left_right.as_ref(), Some(&expected));
        assert_eq!(expected.to_string(), "{1,1'}{2}{2'}");
        assert_eq!(
            PartitionDiagram::reconstruct(&r.left, &r.right, &expected).unwrap(),
            pi
        );
    }

    #[test]
    fn left_right_undefined_off_domain() {
        let pi = d("{1,2}{3,3'}{4,4'}{1'}{2'}");
        assert_eq!(pi.restrictions().unwrap().left_right, None);
        assert!(matches!(
            d("{1,1'}").restrictions(),
            Err(Error::OddArity(1))
        ));
    }

    #[test]
    fn partial_trace_on_diagrams() {
        let id2 = PartitionDiagram::identity(2);
        assert_eq!(
            id2.trace_strands(Side::Right, 1).unwrap(),
            (PartitionDiagram::identity(1), 1)
        );
        let swap = PartitionDiagram::permutation(&Perm::transposition(2, 0, 1));
        assert_eq!(
            swap.trace_strands(Side::Right, 1).unwrap(),
            (PartitionDiagram::identity(1), 0)
        );
        assert_eq!(
            swap.trace_strands(Side::Left, 0).unwrap(),
            (swap.clone(), 0)
        );
        assert_eq!(
            swap.trace_strands(Side::Left, 3),
            Err(Error::TooManyStrands {
                strands: 3,
                arity: 2
            })
        );
    }

    #[test]
    fn text_round_trip() {
        for s in [
            "{1,2'}{2,1'}",
            "{}",
            "{1,2}",
            "{1'}{2'}",
            "{1,3,1',3'}{2,2'}{4,4'}",
        ] {
            assert_eq!(d(s).to_string(), s);
        }
        assert_eq!(d(" { 2 , 1' } { 1 , 2' } ").to_string(), "{1,2'}{2,1'}");
    }

    #[test]
    fn nested_cap_pairs_outside_in() {
        assert_eq!(PartitionDiagram::nested_cap(1).to_string(), "{1,2}");
        assert_eq!(PartitionDiagram::nested_cap(2).to_string(), "{1,4}{2,3}");
    }
}
