//! Fixed-width occupancy grid: one `u16` per row, bit `c` of row `r` is the
//! cell at 0-based `(r, c)`. Supports grids up to 16x16.

use crate::grid::Permutation;

pub const MAX_N: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BitGrid {
    n: usize,
    rows: [u16; MAX_N],
}

impl BitGrid {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_N);
        BitGrid {
            n,
            rows: [0; MAX_N],
        }
    }

    /// All non-hole cells set.
    pub fn free_cells(perm: &Permutation) -> Self {
        let n = perm.n();
        let mut g = Self::empty(n);
        let full = Self::row_mask(n);
        for r in 0..n {
            g.rows[r] = full & !(1 << (perm.hole_col(r as u32 + 1) - 1));
        }
        g
    }

    #[inline]
    pub fn row_mask(n: usize) -> u16 {
        if n >= 16 {
            u16::MAX
        } else {
            (1u16 << n) - 1
        }
    }

    #[inline]
    pub fn span_mask(col: usize, width: usize) -> u16 {
        Self::row_mask(width) << col
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn row(&self, r: usize) -> u16 {
        self.rows[r]
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r] >> c & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize) {
        self.rows[r] |= 1 << c;
    }

    pub fn is_empty(&self) -> bool {
        self.rows[..self.n].iter().all(|&r| r == 0)
    }

    pub fn count(&self) -> u32 {
        self.rows[..self.n].iter().map(|r| r.count_ones()).sum()
    }

    /// First set cell in row-major order.
    #[inline]
    pub fn first(&self) -> Option<(usize, usize)> {
        self.rows[..self.n]
            .iter()
            .enumerate()
            .find(|(_, &bits)| bits != 0)
            .map(|(r, &bits)| (r, bits.trailing_zeros() as usize))
    }

    /// True if every cell of rows `r..r+h` under `mask` is set.
    #[inline]
    pub fn covers(&self, r: usize, h: usize, mask: u16) -> bool {
        self.rows[r..r + h].iter().all(|&bits| bits & mask == mask)
    }

    #[inline]
    pub fn clear_block(&mut self, r: usize, h: usize, mask: u16) {
        for bits in &mut self.rows[r..r + h] {
            *bits &= !mask;
        }
    }

    #[inline]
    pub fn set_block(&mut self, r: usize, h: usize, mask: u16) {
        for bits in &mut self.rows[r..r + h] {
            *bits |= mask;
        }
    }

    /// Lower bound on the number of rectangles needed to partition the set
    /// cells: a cell whose upper and left neighbours are both unset must be the
    /// top-left corner of its own rectangle, and likewise for the other three
    /// corner types. The best of the four counts is returned.
    pub fn corner_bound(&self) -> u32 {
        let mut counts = [0u32; 4];
        for r in 0..self.n {
            let cur = self.rows[r];
            let up = if r > 0 { self.rows[r - 1] } else { 0 };
            let down = if r + 1 < self.n { self.rows[r + 1] } else { 0 };
            let has_left = cur << 1;
            let has_right = cur >> 1;
            counts[0] += (cur & !up & !has_left).count_ones();
            counts[1] += (cur & !up & !has_right).count_ones();
            counts[2] += (cur & !down & !has_left).count_ones();
            counts[3] += (cur & !down & !has_right).count_ones();
        }
        counts.into_iter().max().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_cells_skip_holes() {
        let perm = Permutation::new(vec![2, 3, 1]).unwrap();
        let g = BitGrid::free_cells(&perm);
        assert_eq!(g.count(), 6);
        assert!(!g.get(0, 1));
        assert!(g.get(0, 0));
        assert_eq!(g.first(), Some((0, 0)));
    }

    #[test]
    fn block_ops() {
        let mut g = BitGrid::free_cells(&Permutation::identity(4));
        let mask = BitGrid::span_mask(1, 3);
        assert!(g.covers(0, 1, mask));
        assert!(!g.covers(0, 2, mask));
        g.clear_block(0, 1, mask);
        assert_eq!(g.row(0), 0);
        g.set_block(0, 1, mask);
        assert_eq!(g.row(0), 0b1110);
    }

    #[test]
    fn corner_bound_identity() {
        // identity n=2: two isolated cells, each its own corner
        assert_eq!(
            BitGrid::free_cells(&Permutation::identity(2)).corner_bound(),
            2
        );
        // identity n=3: (1,2),(1,3) | (2,1),(2,3) | (3,1),(3,2)
        assert_eq!(
            BitGrid::free_cells(&Permutation::identity(3)).corner_bound(),
            3
        );
    }

    #[test]
    fn sixteen_wide_rows() {
        let g = BitGrid::free_cells(&Permutation::identity(16));
        assert_eq!(g.count(), 240);
        assert_eq!(BitGrid::row_mask(16), u16::MAX);
    }
}
