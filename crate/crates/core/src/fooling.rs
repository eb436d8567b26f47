//! Lower bounds from fooling sets.
//!
//! A set of non-hole cells is a fooling set when the rectangle spanned by any
//! two of them contains a hole. No tile can then hold two of the cells, so the
//! set's size bounds the tile count of every valid tiling from below.
//!
//! [`build_fanning`] constructs such a set from the two monotone chains of the
//! permutation. Take a longest increasing chain and a longest decreasing chain
//! that share a hole (the pivot). Every other hole lies strictly on one side of
//! each chain, which places it in one of four regions around the pivot:
//!
//! ```text
//!                 north: mark the cell above
//!   west: mark the cell      *      east: mark the cell
//!   to the left                     to the right
//!                 south: mark the cell below
//! ```
//!
//! A hole on the increasing chain borders the west and north regions (or east
//! and south) and marks both outward neighbours; a hole on the decreasing chain
//! does the same with north/east or west/south; the pivot marks all four.
//! Neighbours that fall off the grid are dropped. When the chains meet, the
//! result has exactly `n + |LIS| + |LDS| - 3` cells unless boundary cells are
//! lost, and by Erdős–Szekeres `|LIS| + |LDS| >= 2 sqrt(n)`.

use serde::Serialize;

use crate::chains::{lds, lis, longest_chain_through, on_longest, Chain, ChainKind};
use crate::error::{Error, Result};
use crate::grid::{verify_tiling, Cell, Permutation, Rect, Tiling};

/// Cells claimed to form a fooling set. Sorted, no duplicates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MarkedSet {
    n: usize,
    cells: Vec<Cell>,
}

impl MarkedSet {
    /// Validates the cells against `perm`: in the grid, not on a hole, no
    /// repeats.
    pub fn new(perm: &Permutation, cells: Vec<Cell>) -> Result<Self> {
        let set = Self::from_cells(perm.n(), cells)?;
        set.check_against(perm)?;
        Ok(set)
    }

    /// Checks only the grid bounds and duplicates; hole checks need a
    /// permutation.
    pub fn from_cells(n: usize, mut cells: Vec<Cell>) -> Result<Self> {
        if let Some(&cell) = cells.iter().find(|c| !c.in_grid(n)) {
            return Err(Error::CellOutOfGrid { cell, n });
        }
        cells.sort();
        if let Some(w) = cells.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateCell { cell: w[0] });
        }
        Ok(MarkedSet { n, cells })
    }

    pub fn empty(n: usize) -> Self {
        MarkedSet {
            n,
            cells: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, cell: Cell) -> bool {
        self.cells.binary_search(&cell).is_ok()
    }

    /// Same set without `cell`.
    pub fn without(&self, cell: Cell) -> MarkedSet {
        MarkedSet {
            n: self.n,
            cells: self.cells.iter().copied().filter(|&c| c != cell).collect(),
        }
    }

    pub fn subset(&self, keep: impl Fn(usize, Cell) -> bool) -> MarkedSet {
        MarkedSet {
            n: self.n,
            cells: self
                .cells
                .iter()
                .enumerate()
                .filter(|&(i, &c)| keep(i, c))
                .map(|(_, &c)| c)
                .collect(),
        }
    }

    fn check_against(&self, perm: &Permutation) -> Result<()> {
        if self.n != perm.n() {
            return Err(Error::SizeMismatch {
                expected: perm.n(),
                found: self.n,
            });
        }
        match self.cells.iter().find(|&&c| perm.is_hole(c)) {
            Some(&cell) => Err(Error::CellOnHole { cell }),
            None => Ok(()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FoolingVerdict {
    Valid,
    /// Two cells whose spanned rectangle holds no hole.
    Counterexample(Cell, Cell),
}

impl FoolingVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, FoolingVerdict::Valid)
    }
}

/// 2D prefix counts of holes, for O(1) "is there a hole in this rectangle".
struct HoleCounts {
    n: usize,
    prefix: Vec<u32>,
}

impl HoleCounts {
    fn new(perm: &Permutation) -> Self {
        let n = perm.n();
        let w = n + 1;
        let mut prefix = vec![0u32; w * w];
        for r in 1..=n {
            let hole = perm.hole_col(r as u32) as usize;
            for c in 1..=n {
                prefix[r * w + c] = prefix[(r - 1) * w + c] + prefix[r * w + c - 1]
                    - prefix[(r - 1) * w + c - 1]
                    + u32::from(c == hole);
            }
        }
        HoleCounts { n, prefix }
    }

    fn any_in(&self, rect: &Rect) -> bool {
        let w = self.n + 1;
        let (r1, r2, c1, c2) = (
            rect.r1 as usize,
            rect.r2 as usize,
            rect.c1 as usize,
            rect.c2 as usize,
        );
        let total = self.prefix[r2 * w + c2] + self.prefix[(r1 - 1) * w + c1 - 1];
        let cut = self.prefix[(r1 - 1) * w + c2] + self.prefix[r2 * w + c1 - 1];
        total > cut
    }
}

/// Checks every unordered pair of `set`; reports the first pair (in sorted
/// cell order) whose spanned rectangle contains no hole.
pub fn verify_fooling_set(perm: &Permutation, set: &MarkedSet) -> Result<FoolingVerdict> {
    set.check_against(perm)?;
    let holes = HoleCounts::new(perm);
    let cells = set.cells();
    for (i, &a) in cells.iter().enumerate() {
        for &b in &cells[i + 1..] {
            if !holes.any_in(&Rect::spanned_by(a, b)) {
                return Ok(FoolingVerdict::Counterexample(a, b));
            }
        }
    }
    Ok(FoolingVerdict::Valid)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Up,
    Down,
    Left,
    Right,
}

impl Direction {
    fn step(self, cell: Cell, n: usize) -> Option<Cell> {
        let (r, c) = (cell.row as i64, cell.col as i64);
        let (r, c) = match self {
            Direction::Up => (r - 1, c),
            Direction::Down => (r + 1, c),
            Direction::Left => (r, c - 1),
            Direction::Right => (r, c + 1),
        };
        let inside = |v: i64| v >= 1 && v <= n as i64;
        (inside(r) && inside(c)).then(|| Cell::new(r as u32, c as u32))
    }
}

/// Which side of the two chains a hole sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Placement {
    Pivot,
    /// On the increasing chain; `north_west` tells which side of the
    /// decreasing chain.
    OnIncreasing {
        north_west: bool,
    },
    /// On the decreasing chain; `north_east` tells which side of the
    /// increasing chain.
    OnDecreasing {
        north_east: bool,
    },
    North,
    East,
    South,
    West,
}

impl Placement {
    /// Outward neighbours marked for a hole in this position. The first entry
    /// is the base-layer cell; the rest come from fanning along the chains.
    pub fn directions(self) -> &'static [Direction] {
        use Direction::*;
        match self {
            Placement::Pivot => &[Up, Left, Down, Right],
            Placement::OnIncreasing { north_west: true } => &[Up, Left],
            Placement::OnIncreasing { north_west: false } => &[Down, Right],
            Placement::OnDecreasing { north_east: true } => &[Right, Up],
            Placement::OnDecreasing { north_east: false } => &[Left, Down],
            Placement::North => &[Up],
            Placement::East => &[Right],
            Placement::South => &[Down],
            Placement::West => &[Left],
        }
    }
}

/// The fanning construction with the structure that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fanning {
    pub lis: Chain,
    pub lds: Chain,
    /// Hole where the chains meet, or, when no pair of longest chains shares
    /// a hole, the increasing-chain hole closest to the median row of the
    /// decreasing chain (a reference point only; it gets no extra cells).
    pub pivot: Cell,
    pub shared_pivot: bool,
    pub placements: Vec<Placement>,
    pub cells: MarkedSet,
}

/// First hole after `row` on `chain`, if any.
fn next_on_chain(chain: &Chain, row: u32) -> Option<u32> {
    let i = chain.rows.partition_point(|&r| r <= row);
    chain.cols.get(i).copied()
}

fn choose_chains(perm: &Permutation) -> (Chain, Chain, Cell, bool) {
    let values = perm.as_slice();
    let up = on_longest(values, ChainKind::Increasing);
    let down = on_longest(values, ChainKind::Decreasing);
    if let Some(x) = (0..values.len()).find(|&i| up[i] && down[i]) {
        let row = x as u32 + 1;
        let inc = longest_chain_through(perm, ChainKind::Increasing, row);
        let dec = longest_chain_through(perm, ChainKind::Decreasing, row);
        return (inc, dec, Cell::new(row, values[x]), true);
    }
    let inc = lis(perm);
    let dec = lds(perm);
    let median = dec.rows[dec.rows.len() / 2];
    let (row, col) = inc
        .rows
        .iter()
        .zip(&inc.cols)
        .min_by_key(|(&r, _)| (r.abs_diff(median), r))
        .map(|(&r, &c)| (r, c))
        .expect("chains are never empty");
    (inc, dec, Cell::new(row, col), false)
}

/// Builds the fanning set together with its chains and pivot.
pub fn fanning(perm: &Permutation) -> Fanning {
    let n = perm.n();
    let (inc, dec, pivot, shared) = choose_chains(perm);
    let mut placements = Vec::with_capacity(n);
    let mut cells = Vec::new();
    for hole in perm.holes() {
        let (row, col) = (hole.row, hole.col);
        // a chain hole strictly below this row and left of it
        let north_east = next_on_chain(&inc, row).is_some_and(|c| c < col);
        // a decreasing-chain hole strictly below and right of it
        let north_west = next_on_chain(&dec, row).is_some_and(|c| c > col);
        let placement = match (inc.contains_row(row), dec.contains_row(row)) {
            (true, true) => Placement::Pivot,
            (true, false) => Placement::OnIncreasing { north_west },
            (false, true) => Placement::OnDecreasing { north_east },
            (false, false) => match (north_east, north_west) {
                (true, true) => Placement::North,
                (true, false) => Placement::East,
                (false, true) => Placement::West,
                (false, false) => Placement::South,
            },
        };
        placements.push(placement);
        cells.extend(
            placement
                .directions()
                .iter()
                .filter_map(|d| d.step(hole, n))
                .filter(|c| !perm.is_hole(*c)),
        );
    }
    cells.sort();
    cells.dedup();
    Fanning {
        lis: inc,
        lds: dec,
        pivot,
        shared_pivot: shared,
        placements,
        cells: MarkedSet { n, cells },
    }
}

/// The marked set of the fanning construction.
pub fn build_fanning(perm: &Permutation) -> MarkedSet {
    if perm.n() == 1 {
        return MarkedSet::empty(1);
    }
    fanning(perm).cells
}

/// A verified fooling set packaged as a lower bound for one permutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub perm: Permutation,
    pub cells: MarkedSet,
    pub size: usize,
    pub valid: bool,
    /// `n + 2 ceil(sqrt n) - 3`, for reference.
    pub target: usize,
}

impl Certificate {
    /// Packages `cells`, computing `valid` with the verifier.
    pub fn new(perm: Permutation, cells: MarkedSet) -> Result<Self> {
        let valid = verify_fooling_set(&perm, &cells)?.is_valid();
        Ok(Certificate {
            target: certificate_target(perm.n()),
            size: cells.len(),
            perm,
            cells,
            valid,
        })
    }
}

pub fn ceil_sqrt(n: usize) -> usize {
    let mut r = (n as f64).sqrt() as usize;
    while r * r < n {
        r += 1;
    }
    while r > 0 && (r - 1) * (r - 1) >= n {
        r -= 1;
    }
    r
}

pub fn certificate_target(n: usize) -> usize {
    (n + 2 * ceil_sqrt(n)).saturating_sub(3)
}

/// Drops cells until the set is a fooling set: from each violating pair the
/// cell with the larger `row + col` goes (ties: the larger row). Subsets of a
/// fooling set are fooling sets, so this terminates with a valid set.
pub fn repair(perm: &Permutation, set: &MarkedSet) -> Result<MarkedSet> {
    let mut set = set.clone();
    while let FoolingVerdict::Counterexample(a, b) = verify_fooling_set(perm, &set)? {
        let key = |c: Cell| (c.row + c.col, c.row);
        let drop = if key(a) >= key(b) { a } else { b };
        set = set.without(drop);
    }
    Ok(set)
}

/// Fanning set, verified, repaired if needed, and packaged.
pub fn certify(perm: &Permutation) -> Certificate {
    let built = build_fanning(perm);
    let cells = repair(perm, &built).expect("fanning cells avoid holes");
    Certificate {
        target: certificate_target(perm.n()),
        size: cells.len(),
        perm: perm.clone(),
        cells,
        valid: true,
    }
}

/// Confirms the lower-bound argument on a concrete instance: no tile of the
/// accepted `tiling` holds two certificate cells, hence there are at least as
/// many tiles as certificate cells.
pub fn key_lemma_check(perm: &Permutation, cert: &Certificate, tiling: &Tiling) -> Result<bool> {
    if &cert.perm != perm {
        return Err(Error::InvalidArgument(
            "certificate is for a different permutation".into(),
        ));
    }
    if !cert.valid || !verify_fooling_set(perm, &cert.cells)?.is_valid() {
        return Err(Error::InvalidCertificate);
    }
    if let crate::grid::VerifyResult::Reject(v) = verify_tiling(perm, tiling)? {
        return Err(Error::TilingRejected(v.to_string()));
    }
    for rect in &tiling.rects {
        let mut inside = cert.cells.cells().iter().filter(|c| rect.contains(**c));
        if let (Some(&a), Some(&b)) = (inside.next(), inside.next()) {
            return Err(Error::LemmaViolated { rect: *rect, a, b });
        }
    }
    if tiling.len() < cert.size {
        return Err(Error::LemmaCountViolated {
            tiles: tiling.len(),
            size: cert.size,
        });
    }
    Ok(true)
}
