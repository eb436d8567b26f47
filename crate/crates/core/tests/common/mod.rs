//! Slow, obviously-correct reference implementations for cross-checking.
#![allow(dead_code)]

use std::collections::HashMap;

use matilda::{Cell, Permutation};

/// All permutations of `1..=n` in lexicographic order, by plain recursion.
pub fn all_perms(n: usize) -> Vec<Vec<u32>> {
    fn go(prefix: &mut Vec<u32>, left: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..left.len() {
            let v = left.remove(i);
            prefix.push(v);
            go(prefix, left, out);
            prefix.pop();
            left.insert(i, v);
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut (1..=n as u32).collect(), &mut out);
    out
}

/// Minimum number of hole-free rectangles partitioning the free cells,
/// by memoised exhaustive search over covered-cell bitmasks. `n <= 7`.
pub fn brute_min_partition(map: &[u32]) -> usize {
    let n = map.len();
    assert!(n * n <= 64);
    let bit = |r: usize, c: usize| 1u64 << (r * n + c);
    let hole = |r: usize, c: usize| map[r] as usize == c + 1;
    let mut free = 0u64;
    for r in 0..n {
        for c in 0..n {
            if !hole(r, c) {
                free |= bit(r, c);
            }
        }
    }
    let mut rects = Vec::new();
    for r1 in 0..n {
        for r2 in r1..n {
            for c1 in 0..n {
                for c2 in c1..n {
                    let mut mask = 0u64;
                    let mut ok = true;
                    for r in r1..=r2 {
                        for c in c1..=c2 {
                            ok &= !hole(r, c);
                            mask |= bit(r, c);
                        }
                    }
                    if ok {
                        rects.push(mask);
                    }
                }
            }
        }
    }
    fn go(covered: u64, free: u64, rects: &[u64], memo: &mut HashMap<u64, usize>) -> usize {
        let open = free & !covered;
        if open == 0 {
            return 0;
        }
        if let Some(&v) = memo.get(&covered) {
            return v;
        }
        let low = open & open.wrapping_neg();
        let mut best = usize::MAX;
        for &r in rects {
            if r & low != 0 && r & covered == 0 {
                best = best.min(1 + go(covered | r, free, rects, memo));
            }
        }
        memo.insert(covered, best);
        best
    }
    go(0, free, &rects, &mut HashMap::new())
}

/// `M(n)` and the lexicographically first permutation attaining it.
pub fn naive_global_min(n: usize) -> (usize, Vec<u32>) {
    let mut best: Option<(usize, Vec<u32>)> = None;
    for p in all_perms(n) {
        let m = brute_min_partition(&p);
        if best.as_ref().is_none_or(|(b, _)| m < *b) {
            best = Some((m, p));
        }
    }
    best.unwrap()
}

/// Fooling-set check straight from the definition: every pair spans a
/// rectangle containing some hole, found by scanning the holes.
pub fn naive_is_fooling(map: &[u32], cells: &[Cell]) -> bool {
    for (i, a) in cells.iter().enumerate() {
        for b in &cells[i + 1..] {
            let (r1, r2) = (a.row.min(b.row), a.row.max(b.row));
            let (c1, c2) = (a.col.min(b.col), a.col.max(b.col));
            let blocked = (1..=map.len() as u32).any(|r| {
                let c = map[r as usize - 1];
                (r1..=r2).contains(&r) && (c1..=c2).contains(&c)
            });
            if !blocked {
                return false;
            }
        }
    }
    true
}

/// Longest strictly monotone subsequence by quadratic DP.
pub fn longest_monotone(map: &[u32], increasing: bool) -> usize {
    let mut best = vec![1usize; map.len()];
    for j in 0..map.len() {
        for i in 0..j {
            if (map[i] < map[j]) == increasing {
                best[j] = best[j].max(best[i] + 1);
            }
        }
    }
    best.into_iter().max().unwrap_or(0)
}

pub fn perm(map: &[u32]) -> Permutation {
    Permutation::new(map.to_vec()).unwrap()
}
