//! Upper-bound side: residue-block permutations for `n = k^2`, the
//! conjectured optimum `k^2 + 2k - 3`, and the explicit 9x9 reference tiling.

use crate::grid::{Permutation, Rect, Tiling};
use crate::solver::{min_partition, SearchBudget, SolveError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResidueParams {
    pub k: u32,
}

impl ResidueParams {
    pub fn new(k: u32) -> Option<Self> {
        (k >= 1).then_some(ResidueParams { k })
    }

    pub fn n(&self) -> usize {
        (self.k * self.k) as usize
    }
}

/// Residue-block permutation of `n = k^2`.
///
/// Position `i` (1-based) with `i - 1 = q*k + r`, `0 <= r < k`, holds the
/// value `(k - 1 - r)*k + q + 1`. Consecutive blocks of `k` positions are
/// each strictly decreasing in steps of `k`, and block `q` holds exactly the
/// values congruent to `q + 1` modulo `k`. For `k = 3` this is
/// `(7,4,1,8,5,2,9,6,3)`.
pub fn residue_permutation(k: u32) -> Permutation {
    assert!(k >= 1, "k must be positive");
    let n = k * k;
    let map = (0..n)
        .map(|i| {
            let (q, r) = (i / k, i % k);
            (k - 1 - r) * k + q + 1
        })
        .collect();
    Permutation::new(map).expect("residue map is a bijection")
}

/// Structural check for residue-block permutations: `k` blocks of `k`
/// consecutive positions, each decreasing by exactly `k`, block `q` starting
/// at `(k - 1)*k + q + 1`.
pub fn has_residue_blocks(perm: &Permutation, k: u32) -> bool {
    let k = k as usize;
    if perm.n() != k * k {
        return false;
    }
    perm.as_slice().chunks(k).enumerate().all(|(q, block)| {
        block[0] as usize == (k - 1) * k + q + 1
            && block.windows(2).all(|w| w[0] as usize == w[1] as usize + k)
    })
}

/// `k^2 + 2k - 3`, the conjectured minimum for `n = k^2`. Defined for `k >= 2`.
pub fn conjectured_min(k: u64) -> Option<u64> {
    (k >= 2).then(|| k * k + 2 * k - 3)
}

/// The explicit 12-tile covering of the residue permutation for `n = 9`.
///
/// Rects are listed under the labels A, B, L, C, D, E, F, G, H, I, J, K of
/// the usual drawing of this covering.
pub fn reference_tiling_9() -> (Permutation, Tiling) {
    let rects = [
        (1, 2, 1, 3),
        (1, 3, 8, 9),
        (1, 1, 4, 6),
        (2, 4, 5, 7),
        (3, 5, 2, 4),
        (4, 6, 1, 1),
        (4, 6, 9, 9),
        (5, 7, 6, 8),
        (6, 8, 3, 5),
        (7, 9, 1, 2),
        (8, 9, 7, 9),
        (9, 9, 4, 6),
    ]
    .into_iter()
    .map(|(r1, r2, c1, c2)| Rect::new(r1, r2, c1, c2))
    .collect();
    (residue_permutation(3), Tiling::new(9, rects))
}

/// Exact minimum for the residue permutation of `k`.
pub fn residue_upper_bound(
    k: u32,
    budget: &SearchBudget,
) -> Result<crate::solver::SolveResult, SolveError> {
    let result = min_partition(&residue_permutation(k), budget)?;
    if let Some(expected) = conjectured_min(k as u64) {
        debug_assert_eq!(
            result.min_count as u64, expected,
            "residue optimum for k={k}"
        );
    }
    Ok(result)
}
