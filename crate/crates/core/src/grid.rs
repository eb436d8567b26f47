//! Grid vocabulary: cells, rectangles, hole permutations and tilings.
//!
//! Coordinates are 1-based everywhere, rows first. A [`Rect`] is stored as
//! inclusive row and column ranges, so `Rect::new(1, 2, 1, 3)` is the tile
//! covering rows 1-2 and columns 1-3.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cell {
    pub row: u32,
    pub col: u32,
}

impl Cell {
    pub const fn new(row: u32, col: u32) -> Self {
        Cell { row, col }
    }

    pub fn in_grid(self, n: usize) -> bool {
        self.row >= 1 && self.col >= 1 && self.row as usize <= n && self.col as usize <= n
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.row, self.col)
    }
}

/// An axis-aligned tile covering rows `r1..=r2` and columns `c1..=c2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Rect {
    pub r1: u32,
    pub r2: u32,
    pub c1: u32,
    pub c2: u32,
}

impl Rect {
    /// Panics if the ranges are empty or not 1-based; use [`Rect::try_new`]
    /// for untrusted input.
    pub fn new(r1: u32, r2: u32, c1: u32, c2: u32) -> Self {
        Self::try_new(r1, r2, c1, c2).expect("invalid rectangle")
    }

    pub fn try_new(r1: u32, r2: u32, c1: u32, c2: u32) -> Result<Self> {
        if r1 == 0 || c1 == 0 || r1 > r2 || c1 > c2 {
            return Err(Error::InvalidRect { r1, r2, c1, c2 });
        }
        Ok(Rect { r1, r2, c1, c2 })
    }

    /// Smallest rectangle containing both cells.
    pub fn spanned_by(a: Cell, b: Cell) -> Self {
        Rect {
            r1: a.row.min(b.row),
            r2: a.row.max(b.row),
            c1: a.col.min(b.col),
            c2: a.col.max(b.col),
        }
    }

    pub fn height(&self) -> u32 {
        self.r2 - self.r1 + 1
    }

    pub fn width(&self) -> u32 {
        self.c2 - self.c1 + 1
    }

    pub fn area(&self) -> u64 {
        self.height() as u64 * self.width() as u64
    }

    pub fn contains(&self, cell: Cell) -> bool {
        (self.r1..=self.r2).contains(&cell.row) && (self.c1..=self.c2).contains(&cell.col)
    }

    pub fn overlaps(&self, other: &Rect) -> bool {
        self.r1 <= other.r2 && other.r1 <= self.r2 && self.c1 <= other.c2 && other.c1 <= self.c2
    }

    pub fn in_grid(&self, n: usize) -> bool {
        self.r2 as usize <= n && self.c2 as usize <= n
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        (self.r1..=self.r2).flat_map(move |r| (self.c1..=self.c2).map(move |c| Cell::new(r, c)))
    }

    /// Ordering key used for labels and canonical output: `(r1, c1, r2, c2)`.
    pub fn sort_key(&self) -> (u32, u32, u32, u32) {
        (self.r1, self.c1, self.r2, self.c2)
    }
}

impl fmt::Display for Rect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "rows {}-{}, cols {}-{}",
            self.r1, self.r2, self.c1, self.c2
        )
    }
}

pub fn rect_contains(rect: &Rect, cell: Cell) -> bool {
    rect.contains(cell)
}

pub fn rects_overlap(a: &Rect, b: &Rect) -> bool {
    a.overlaps(b)
}

/// Hole configuration: row `i` has its uncovered square at column `map[i-1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    map: Vec<u32>,
}

impl Permutation {
    pub fn new(map: Vec<u32>) -> Result<Self> {
        let n = map.len();
        if n == 0 {
            return Err(Error::NotABijection("empty permutation".into()));
        }
        let mut seen = vec![false; n];
        for (i, &v) in map.iter().enumerate() {
            if v == 0 || v as usize > n {
                return Err(Error::NotABijection(format!(
                    "value {v} at position {} is outside 1..={n}",
                    i + 1
                )));
            }
            if std::mem::replace(&mut seen[v as usize - 1], true) {
                return Err(Error::NotABijection(format!(
                    "value {v} appears more than once"
                )));
            }
        }
        Ok(Permutation { map })
    }

    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "grid size must be positive");
        Permutation {
            map: (1..=n as u32).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.map.len()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.map
    }

    /// Column of the hole in `row` (1-based).
    pub fn hole_col(&self, row: u32) -> u32 {
        self.map[row as usize - 1]
    }

    pub fn is_hole(&self, cell: Cell) -> bool {
        cell.in_grid(self.n()) && self.hole_col(cell.row) == cell.col
    }

    pub fn holes(&self) -> impl Iterator<Item = Cell> + '_ {
        self.map
            .iter()
            .enumerate()
            .map(|(i, &c)| Cell::new(i as u32 + 1, c))
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.n()];
        for (i, &c) in self.map.iter().enumerate() {
            inv[c as usize - 1] = i as u32 + 1;
        }
        Permutation { map: inv }
    }

    /// First hole inside `rect`, scanning rows top to bottom.
    pub fn hole_in(&self, rect: &Rect) -> Option<Cell> {
        let r2 = (rect.r2 as usize).min(self.n()) as u32;
        (rect.r1..=r2)
            .map(|r| Cell::new(r, self.hole_col(r)))
            .find(|h| rect.contains(*h))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.map.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

/// A claimed solution: a collection of tiles on an `n x n` grid.
///
/// Nothing is validated on construction; [`verify_tiling`] decides.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tiling {
    pub n: usize,
    pub rects: Vec<Rect>,
}

impl Tiling {
    pub fn new(n: usize, rects: Vec<Rect>) -> Self {
        Tiling { n, rects }
    }

    pub fn len(&self) -> usize {
        self.rects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rects.is_empty()
    }

    /// Same tiles, sorted by `(r1, c1, r2, c2)`.
    pub fn canonical(&self) -> Tiling {
        let mut rects = self.rects.clone();
        rects.sort_by_key(Rect::sort_key);
        Tiling { n: self.n, rects }
    }

    /// Two tiles per row: the runs left and right of each hole. Always valid.
    pub fn row_strips(perm: &Permutation) -> Tiling {
        let n = perm.n() as u32;
        let mut rects = Vec::new();
        for row in 1..=n {
            let hole = perm.hole_col(row);
            if hole > 1 {
                rects.push(Rect::new(row, row, 1, hole - 1));
            }
            if hole < n {
                rects.push(Rect::new(row, row, hole + 1, n));
            }
        }
        Tiling {
            n: n as usize,
            rects,
        }
    }
}

/// Why a tiling was rejected. Clauses are checked in the order listed here and
/// the first failure is reported.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    OutOfBounds { rect: Rect },
    Overlap { a: Rect, b: Rect, cell: Cell },
    CoversHole { rect: Rect, hole: Cell },
    Uncovered { cell: Cell },
}

impl Violation {
    /// Clause index 0..=3 in checking order.
    pub fn clause(&self) -> usize {
        match self {
            Violation::OutOfBounds { .. } => 0,
            Violation::Overlap { .. } => 1,
            Violation::CoversHole { .. } => 2,
            Violation::Uncovered { .. } => 3,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::OutOfBounds { rect } => write!(f, "tile [{rect}] leaves the grid"),
            Violation::Overlap { a, b, cell } => {
                write!(f, "tiles [{a}] and [{b}] both cover {cell}")
            }
            Violation::CoversHole { rect, hole } => write!(f, "tile [{rect}] covers hole {hole}"),
            Violation::Uncovered { cell } => write!(f, "cell {cell} is not covered"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerifyResult {
    Accept,
    Reject(Violation),
}

impl VerifyResult {
    pub fn is_accept(&self) -> bool {
        matches!(self, VerifyResult::Accept)
    }
}

/// Checks that `tiling` covers every non-hole cell of `perm` exactly once and
/// no hole at all.
pub fn verify_tiling(perm: &Permutation, tiling: &Tiling) -> Result<VerifyResult> {
    let n = perm.n();
    if tiling.n != n {
        return Err(Error::SizeMismatch {
            expected: n,
            found: tiling.n,
        });
    }
    if let Some(rect) = tiling.rects.iter().find(|r| !r.in_grid(n)) {
        return Ok(VerifyResult::Reject(Violation::OutOfBounds { rect: *rect }));
    }

    // owner[cell] = index of the first tile painted over it
    let mut owner = vec![usize::MAX; n * n];
    for (j, rect) in tiling.rects.iter().enumerate() {
        for cell in rect.cells() {
            let slot = &mut owner[(cell.row as usize - 1) * n + cell.col as usize - 1];
            if *slot != usize::MAX {
                return Ok(VerifyResult::Reject(Violation::Overlap {
                    a: tiling.rects[*slot],
                    b: *rect,
                    cell,
                }));
            }
            *slot = j;
        }
    }

    for rect in &tiling.rects {
        if let Some(hole) = perm.hole_in(rect) {
            return Ok(VerifyResult::Reject(Violation::CoversHole {
                rect: *rect,
                hole,
            }));
        }
    }

    for row in 1..=n as u32 {
        for col in 1..=n as u32 {
            let cell = Cell::new(row, col);
            if owner[(row as usize - 1) * n + col as usize - 1] == usize::MAX && !perm.is_hole(cell)
            {
                return Ok(VerifyResult::Reject(Violation::Uncovered { cell }));
            }
        }
    }
    Ok(VerifyResult::Accept)
}

/// The eight symmetries of the square, acting on cells of an `n x n` grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symmetry {
    Identity,
    Rot90,
    Rot180,
    Rot270,
    FlipRows,
    FlipCols,
    Transpose,
    AntiTranspose,
}

impl Symmetry {
    pub const ALL: [Symmetry; 8] = [
        Symmetry::Identity,
        Symmetry::Rot90,
        Symmetry::Rot180,
        Symmetry::Rot270,
        Symmetry::FlipRows,
        Symmetry::FlipCols,
        Symmetry::Transpose,
        Symmetry::AntiTranspose,
    ];

    pub fn apply_cell(self, n: usize, cell: Cell) -> Cell {
        let m = n as u32 + 1;
        let (r, c) = (cell.row, cell.col);
        let (r, c) = match self {
            Symmetry::Identity => (r, c),
            Symmetry::Rot90 => (c, m - r),
            Symmetry::Rot180 => (m - r, m - c),
            Symmetry::Rot270 => (m - c, r),
            Symmetry::FlipRows => (m - r, c),
            Symmetry::FlipCols => (r, m - c),
            Symmetry::Transpose => (c, r),
            Symmetry::AntiTranspose => (m - c, m - r),
        };
        Cell::new(r, c)
    }

    pub fn apply_rect(self, n: usize, rect: &Rect) -> Rect {
        let a = self.apply_cell(n, Cell::new(rect.r1, rect.c1));
        let b = self.apply_cell(n, Cell::new(rect.r2, rect.c2));
        Rect::spanned_by(a, b)
    }

    /// Image of the hole set, which is again a permutation matrix.
    pub fn apply_perm(self, perm: &Permutation) -> Permutation {
        let n = perm.n();
        let mut map = vec![0; n];
        for hole in perm.holes() {
            let h = self.apply_cell(n, hole);
            map[h.row as usize - 1] = h.col;
        }
        Permutation { map }
    }

    pub fn apply_tiling(self, tiling: &Tiling) -> Tiling {
        Tiling {
            n: tiling.n,
            rects: tiling
                .rects
                .iter()
                .map(|r| self.apply_rect(tiling.n, r))
                .collect(),
        }
    }
}

/// True if `perm` is the lexicographically least member of its orbit under
/// the eight square symmetries.
pub fn is_orbit_representative(perm: &Permutation) -> bool {
    Symmetry::ALL[1..]
        .iter()
        .all(|g| perm.as_slice() <= g.apply_perm(perm).as_slice())
}
