//! Enumeration of `P_{a,b}` as restricted growth strings.
//!
//! Diagrams are listed in lexicographic order of their canonical labels.
//! A completion-count table makes it possible to jump straight to the
//! `k`-th diagram, so the index range `[0, Bell(a+b))` can be cut into
//! independent chunks for parallel workers.

use super::PartitionDiagram;
use crate::error::{Error, Result};

/// Largest `a + b` enumerated unless the caller raises the cap.
pub const DEFAULT_CAP: usize = 14;

/// `completions(r, m)`: ways to fill `r` more labels when `m` blocks are open.
fn completion_table(len: usize) -> Vec<Vec<u128>> {
    let mut table = vec![vec![0u128; len + 2]; len + 1];
    for m in 0..=len + 1 {
        table[0][m] = 1;
    }
    for r in 1..=len {
        for m in 0..=len - r + 1 {
            table[r][m] = (m as u128)
                .saturating_mul(table[r - 1][m])
                .saturating_add(table[r - 1][m + 1]);
        }
    }
    table
}

/// The Bell number `B(n)`, saturating at `u128::MAX`.
pub fn bell(n: usize) -> u128 {
    completion_table(n)[n][0]
}

/// Iterator over a contiguous index range of `P_{a,b}`.
#[derive(Clone, Debug)]
pub struct DiagramIter {
    top: usize,
    bottom: usize,
    labels: Vec<u8>,
    /// `prefix_max[i]` is one more than the largest label in `labels[..i]`.
    prefix_max: Vec<u8>,
    remaining: u128,
}

impl DiagramIter {
    fn starting_at(top: usize, bottom: usize, start: u128, count: u128) -> Self {
        let len = top + bottom;
        let table = completion_table(len);
        let mut labels = vec![0u8; len];
        let mut prefix_max = vec![0u8; len + 1];
        let mut rank = start;
        let mut open = 0usize;
        if count > 0 {
            for pos in 0..len {
                let rest = len - pos - 1;
                let per_old = table[rest][open];
                let old_total = per_old.saturating_mul(open as u128);
                let label = if rank < old_total {
                    let c = rank / per_old;
                    rank -= c * per_old;
                    c as usize
                } else {
                    rank -= old_total;
                    open += 1;
                    open - 1
                };
                labels[pos] = label as u8;
                prefix_max[pos + 1] = open as u8;
            }
        }
        Self {
            top,
            bottom,
            labels,
            prefix_max,
            remaining: count,
        }
    }

    fn advance(&mut self) {
        let len = self.labels.len();
        for pos in (1..len).rev() {
            if self.labels[pos] < self.prefix_max[pos] {
                self.labels[pos] += 1;
                let open = self.prefix_max[pos].max(self.labels[pos] + 1);
                self.prefix_max[pos + 1] = open;
                for later in pos + 1..len {
                    self.labels[later] = 0;
                    self.prefix_max[later + 1] = open;
                }
                return;
            }
        }
    }
}

impl Iterator for DiagramIter {
    type Item = PartitionDiagram;

    fn next(&mut self) -> Option<PartitionDiagram> {
        if self.remaining == 0 {
            return None;
        }
        let d = PartitionDiagram::from_rgs(self.top, self.bottom, self.labels.clone());
        self.remaining -= 1;
        if self.remaining > 0 {
            self.advance();
        }
        Some(d)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = usize::try_from(self.remaining).unwrap_or(usize::MAX);
        (n, usize::try_from(self.remaining).ok())
    }
}

fn check_cap(top: usize, bottom: usize, cap: usize) -> Result<()> {
    if top + bottom > cap {
        return Err(Error::EnumerationCap {
            top,
            bottom,
            bell: bell(top + bottom),
            cap,
        });
    }
    Ok(())
}

/// All of `P_{a,b}`, refusing when `a + b` exceeds `cap`.
pub fn enumerate_diagrams(top: usize, bottom: usize, cap: usize) -> Result<DiagramIter> {
    check_cap(top, bottom, cap)?;
    Ok(DiagramIter::starting_at(top, bottom, 0, bell(top + bottom)))
}

/// Diagrams with index in `[start, end)`, clamped to `Bell(a+b)`.
pub fn enumerate_range(
    top: usize,
    bottom: usize,
    start: u128,
    end: u128,
    cap: usize,
) -> Result<DiagramIter> {
    check_cap(top, bottom, cap)?;
    let total = bell(top + bottom);
    let end = end.min(total);
    let start = start.min(end);
    Ok(DiagramIter::starting_at(top, bottom, start, end - start))
}
