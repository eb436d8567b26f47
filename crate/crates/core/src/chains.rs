//! Longest increasing and decreasing subsequences of a hole permutation.
//!
//! Lengths come from patience sorting in both directions, which gives for
//! every position the longest chain ending there and the longest chain
//! starting there. The canonical chain is then read off greedily: at each step
//! take the smallest row that can still finish a maximum-length chain. That is
//! the lexicographically least index sequence among all longest chains.

use serde::Serialize;

use crate::grid::{Cell, Permutation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ChainKind {
    /// Strictly increasing columns (LIS).
    Increasing,
    /// Strictly decreasing columns (LDS).
    Decreasing,
}

impl ChainKind {
    #[inline]
    fn follows(self, prev: u32, next: u32) -> bool {
        match self {
            ChainKind::Increasing => prev < next,
            ChainKind::Decreasing => prev > next,
        }
    }

    fn reversed(self) -> ChainKind {
        match self {
            ChainKind::Increasing => ChainKind::Decreasing,
            ChainKind::Decreasing => ChainKind::Increasing,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Chain {
    pub kind: ChainKind,
    /// Row indices, strictly increasing, 1-based.
    pub rows: Vec<u32>,
    /// Hole columns along the chain.
    pub cols: Vec<u32>,
}

impl Chain {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn contains_row(&self, row: u32) -> bool {
        self.rows.binary_search(&row).is_ok()
    }

    pub fn holes(&self) -> impl Iterator<Item = Cell> + '_ {
        self.rows
            .iter()
            .zip(&self.cols)
            .map(|(&r, &c)| Cell::new(r, c))
    }

    /// Checks the chain invariants against `perm`.
    pub fn is_valid_for(&self, perm: &Permutation) -> bool {
        self.rows.len() == self.cols.len()
            && self.rows.windows(2).all(|w| w[0] < w[1])
            && self.cols.windows(2).all(|w| self.kind.follows(w[0], w[1]))
            && self
                .holes()
                .all(|h| h.row >= 1 && h.row as usize <= perm.n() && perm.hole_col(h.row) == h.col)
    }
}

/// Length of the longest `kind` chain ending at each position.
fn chain_ends(values: &[u32], kind: ChainKind) -> Vec<usize> {
    let mut tails: Vec<u32> = Vec::new();
    values
        .iter()
        .map(|&v| {
            // tails stays sorted in the chain's own order
            let pos = tails.partition_point(|&t| kind.follows(t, v));
            if pos == tails.len() {
                tails.push(v);
            } else {
                tails[pos] = v;
            }
            pos + 1
        })
        .collect()
}

/// Length of the longest `kind` chain starting at each position.
fn chain_starts(values: &[u32], kind: ChainKind) -> Vec<usize> {
    let rev: Vec<u32> = values.iter().rev().copied().collect();
    let mut starts = chain_ends(&rev, kind.reversed());
    starts.reverse();
    starts
}

/// Positions (0-based) that lie on at least one longest `kind` chain.
pub(crate) fn on_longest(values: &[u32], kind: ChainKind) -> Vec<bool> {
    let ends = chain_ends(values, kind);
    let starts = chain_starts(values, kind);
    let best = ends.iter().copied().max().unwrap_or(0);
    ends.iter()
        .zip(&starts)
        .map(|(e, s)| e + s - 1 == best)
        .collect()
}

/// Lexicographically least longest chain of `values`, as 0-based positions.
fn canonical_positions(values: &[u32], kind: ChainKind) -> Vec<usize> {
    let starts = chain_starts(values, kind);
    let mut need = starts.iter().copied().max().unwrap_or(0);
    let mut picked = Vec::with_capacity(need);
    let mut last: Option<u32> = None;
    for (i, &v) in values.iter().enumerate() {
        if need == 0 {
            break;
        }
        if starts[i] >= need && last.is_none_or(|prev| kind.follows(prev, v)) {
            picked.push(i);
            last = Some(v);
            need -= 1;
        }
    }
    picked
}

fn chain_from_positions(perm: &Permutation, kind: ChainKind, positions: &[usize]) -> Chain {
    let values = perm.as_slice();
    Chain {
        kind,
        rows: positions.iter().map(|&i| i as u32 + 1).collect(),
        cols: positions.iter().map(|&i| values[i]).collect(),
    }
}

pub fn longest_chain(perm: &Permutation, kind: ChainKind) -> Chain {
    chain_from_positions(perm, kind, &canonical_positions(perm.as_slice(), kind))
}

/// Canonical longest increasing subsequence.
pub fn lis(perm: &Permutation) -> Chain {
    longest_chain(perm, ChainKind::Increasing)
}

/// Canonical longest decreasing subsequence.
pub fn lds(perm: &Permutation) -> Chain {
    longest_chain(perm, ChainKind::Decreasing)
}

/// Lexicographically least longest chain passing through row `through`
/// (1-based). The row must lie on some longest chain.
pub fn longest_chain_through(perm: &Permutation, kind: ChainKind, through: u32) -> Chain {
    let values = perm.as_slice();
    let x = through as usize - 1;
    let pivot = values[x];
    // Everything that can share a chain with the pivot. Any chain in this
    // subsequence can be extended by the pivot, so its longest chains pass
    // through it.
    let keep: Vec<usize> = (0..values.len())
        .filter(|&i| {
            i == x
                || (i < x && kind.follows(values[i], pivot))
                || (i > x && kind.follows(pivot, values[i]))
        })
        .collect();
    let sub: Vec<u32> = keep.iter().map(|&i| values[i]).collect();
    let positions: Vec<usize> = canonical_positions(&sub, kind)
        .into_iter()
        .map(|j| keep[j])
        .collect();
    debug_assert!(positions.contains(&x));
    chain_from_positions(perm, kind, &positions)
}
