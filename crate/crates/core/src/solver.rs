//! Exact minimum rectangle partitions by branch and bound.
//!
//! The search always branches on the first uncovered cell in row-major order.
//! Every cell before it is already covered, so whichever tile covers it has it
//! as its top-left corner; branching over all hole-free rectangles anchored
//! there enumerates each partition exactly once.
//!
//! Two lower bounds prune the tree: the forced-corner count of the uncovered
//! region ([`BitGrid::corner_bound`]) at every node, and the fooling-set
//! certificate of the whole permutation at the root. When the incumbent meets
//! the root bound the search stops early.

use std::collections::HashMap;
use std::fmt;
use std::ops::RangeInclusive;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::bitgrid::{BitGrid, MAX_N};
use crate::error::Error;
use crate::fooling;
use crate::grid::{is_orbit_representative, Permutation, Rect, Tiling};

/// Largest `n` accepted by [`min_partition`].
pub const MAX_PARTITION_N: usize = MAX_N;

/// Largest `n` accepted by [`global_min`]. `n = 9` enumerates 9! permutations
/// and is only practical with a generous budget.
pub const MAX_GLOBAL_N: usize = 9;

const TT_CAPACITY: usize = 1 << 22;
/// Orbit representatives searched per wave by the global search.
const WAVE: usize = 32;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
}

impl SearchBudget {
    pub fn unlimited() -> Self {
        Self::default()
    }

    pub fn nodes(max_nodes: u64) -> Self {
        SearchBudget {
            max_nodes: Some(max_nodes),
            max_time: None,
        }
    }

    pub fn time(max_time: Duration) -> Self {
        SearchBudget {
            max_nodes: None,
            max_time: Some(max_time),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolverOptions {
    pub budget: SearchBudget,
    /// Remember explored occupancy states and skip revisits reached with no
    /// fewer tiles. Costs memory; helps on the larger fixed-permutation solves.
    pub transposition_table: bool,
    /// Spread [`global_min`] over the rayon pool. Results are identical to the
    /// sequential mode.
    pub parallel: bool,
}

impl SolverOptions {
    pub fn with_budget(budget: SearchBudget) -> Self {
        SolverOptions {
            budget,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub min_count: usize,
    /// False when the budget ran out: `min_count` is then only an upper bound.
    pub optimal: bool,
    pub witness: Tiling,
    pub nodes: u64,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalResult {
    pub n: usize,
    pub min_count: usize,
    pub optimal: bool,
    pub best_perm: Permutation,
    pub witness: Tiling,
    pub nodes: u64,
    /// Orbit representatives that needed a search after the certificate
    /// bound was applied.
    pub searched: usize,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchError<T> {
    Input(Error),
    /// The budget ran out; the payload is the best result found so far,
    /// flagged non-optimal.
    BudgetExceeded(Box<T>),
}

impl<T> From<Error> for SearchError<T> {
    fn from(e: Error) -> Self {
        SearchError::Input(e)
    }
}

impl<T> fmt::Display for SearchError<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchError::Input(e) => e.fmt(f),
            SearchError::BudgetExceeded(_) => f.write_str("search budget exceeded"),
        }
    }
}

impl<T: fmt::Debug> std::error::Error for SearchError<T> {}

pub type SolveError = SearchError<SolveResult>;
pub type GlobalError = SearchError<GlobalResult>;

/// Budget shared by every search spawned for one request.
struct Clock {
    max_nodes: Option<u64>,
    deadline: Option<Instant>,
    spent: AtomicU64,
    expired: AtomicBool,
}

impl Clock {
    fn new(budget: &SearchBudget) -> Self {
        Clock {
            max_nodes: budget.max_nodes,
            deadline: budget.max_time.map(|d| Instant::now() + d),
            spent: AtomicU64::new(0),
            expired: AtomicBool::new(false),
        }
    }

    /// Charges `nodes` and reports whether the budget still holds.
    fn charge(&self, nodes: u64) -> bool {
        if self.expired.load(Ordering::Relaxed) {
            return false;
        }
        let spent = self.spent.fetch_add(nodes, Ordering::Relaxed) + nodes;
        let over_nodes = self.max_nodes.is_some_and(|m| spent > m);
        let over_time = self.deadline.is_some_and(|d| Instant::now() >= d);
        if over_nodes || over_time {
            self.expired.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }
}

#[derive(Clone, Copy)]
struct Placed {
    row: u8,
    col: u8,
    h: u8,
    w: u8,
}

impl Placed {
    fn to_rect(self) -> Rect {
        let (r, c) = (self.row as u32 + 1, self.col as u32 + 1);
        Rect::new(r, r + self.h as u32 - 1, c, c + self.w as u32 - 1)
    }
}

struct Search<'a> {
    n: usize,
    clock: &'a Clock,
    /// Search only for partitions with strictly fewer tiles than this.
    bound: u32,
    /// Stop as soon as a partition of this size is found.
    floor: u32,
    best: Option<Vec<Placed>>,
    stack: Vec<Placed>,
    candidates: Vec<Vec<(u8, u8)>>,
    tt: Option<HashMap<BitGrid, u32>>,
    nodes: u64,
    unflushed: u64,
    aborted: bool,
    done: bool,
}

impl<'a> Search<'a> {
    fn new(n: usize, clock: &'a Clock, bound: u32, floor: u32, use_tt: bool) -> Self {
        Search {
            n,
            clock,
            bound,
            floor,
            best: None,
            stack: Vec::with_capacity(n * n),
            candidates: vec![Vec::new(); n * n + 1],
            tt: use_tt.then(HashMap::new),
            nodes: 0,
            unflushed: 0,
            aborted: false,
            done: false,
        }
    }

    fn run(&mut self, free: &mut BitGrid) {
        self.dfs(free, 0);
        if self.unflushed > 0 && !self.clock.charge(self.unflushed) && !self.done {
            self.aborted = true;
        }
    }

    fn dfs(&mut self, free: &mut BitGrid, count: u32) {
        if self.aborted || self.done {
            return;
        }
        self.nodes += 1;
        self.unflushed += 1;
        if self.unflushed >= 1024 {
            let batch = std::mem::take(&mut self.unflushed);
            if !self.clock.charge(batch) {
                self.aborted = true;
                return;
            }
        }

        let Some((row, col)) = free.first() else {
            // count < bound is guaranteed by the pruning below
            self.bound = count;
            self.best = Some(self.stack.clone());
            if count <= self.floor {
                self.done = true;
            }
            return;
        };
        if count + free.corner_bound() >= self.bound {
            return;
        }
        if let Some(tt) = &mut self.tt {
            match tt.get(free) {
                Some(&seen) if seen <= count => return,
                _ if tt.len() < TT_CAPACITY => {
                    tt.insert(*free, count);
                }
                _ => {}
            }
        }

        let depth = count as usize;
        let mut cands = std::mem::take(&mut self.candidates[depth]);
        cands.clear();
        let run = (!(free.row(row) >> col)).trailing_zeros() as usize;
        let max_w = run.min(self.n - col);
        let mut max_h = self.n - row;
        for w in 1..=max_w {
            let mask = BitGrid::span_mask(col, w);
            let mut h = 1;
            while h < max_h && free.row(row + h) & mask == mask {
                h += 1;
            }
            max_h = h;
            for hh in 1..=h {
                cands.push((hh as u8, w as u8));
            }
        }
        // Large tiles first so good incumbents appear early.
        cands.sort_by(|a, b| {
            let area = |&(h, w): &(u8, u8)| h as u32 * w as u32;
            area(b).cmp(&area(a)).then(b.0.cmp(&a.0))
        });

        for &(h, w) in &cands {
            if count + 1 >= self.bound {
                break;
            }
            let mask = BitGrid::span_mask(col, w as usize);
            free.clear_block(row, h as usize, mask);
            self.stack.push(Placed {
                row: row as u8,
                col: col as u8,
                h,
                w,
            });
            self.dfs(free, count + 1);
            self.stack.pop();
            free.set_block(row, h as usize, mask);
            if self.aborted || self.done {
                break;
            }
        }
        self.candidates[depth] = cands;
    }
}

struct Partition {
    tiling: Option<Tiling>,
    complete: bool,
    nodes: u64,
}

/// Searches for a partition of `perm` using fewer than `cutoff` tiles.
fn partition_below(
    perm: &Permutation,
    cutoff: u32,
    floor: u32,
    clock: &Clock,
    use_tt: bool,
) -> Partition {
    let n = perm.n();
    let mut free = BitGrid::free_cells(perm);
    let mut search = Search::new(n, clock, cutoff, floor, use_tt);
    search.run(&mut free);
    Partition {
        tiling: search
            .best
            .map(|rects| Tiling::new(n, rects.into_iter().map(Placed::to_rect).collect())),
        complete: !search.aborted,
        nodes: search.nodes,
    }
}

fn check_partition_size(perm: &Permutation) -> Result<(), Error> {
    if perm.n() > MAX_PARTITION_N {
        return Err(Error::GridTooLarge {
            n: perm.n(),
            max: MAX_PARTITION_N,
        });
    }
    Ok(())
}

/// Exact minimum number of tiles for one hole configuration.
pub fn min_partition(perm: &Permutation, budget: &SearchBudget) -> Result<SolveResult, SolveError> {
    min_partition_with(perm, &SolverOptions::with_budget(*budget))
}

pub fn min_partition_with(
    perm: &Permutation,
    opts: &SolverOptions,
) -> Result<SolveResult, SolveError> {
    check_partition_size(perm)?;
    let start = Instant::now();
    let clock = Clock::new(&opts.budget);

    let strips = Tiling::row_strips(perm);
    let floor = root_lower_bound(perm);
    let mut result = SolveResult {
        min_count: strips.len(),
        optimal: true,
        witness: strips,
        nodes: 0,
        elapsed: Duration::ZERO,
    };
    if floor as usize >= result.min_count {
        result.elapsed = start.elapsed();
        return Ok(result);
    }

    let part = partition_below(
        perm,
        result.min_count as u32,
        floor,
        &clock,
        opts.transposition_table,
    );
    result.nodes = part.nodes;
    if let Some(t) = part.tiling {
        result.min_count = t.len();
        result.witness = t.canonical();
    }
    result.elapsed = start.elapsed();
    if part.complete {
        Ok(result)
    } else {
        result.optimal = false;
        Err(SearchError::BudgetExceeded(Box::new(result)))
    }
}

/// Best of the certificate size and the forced-corner count.
pub fn root_lower_bound(perm: &Permutation) -> u32 {
    let cert = fooling::certify(perm).size as u32;
    cert.max(BitGrid::free_cells(perm).corner_bound())
}

/// Iterates all permutations of `1..=n` in lexicographic order.
pub fn permutations(n: usize) -> impl Iterator<Item = Permutation> {
    let mut next: Option<Vec<u32>> = Some((1..=n as u32).collect());
    std::iter::from_fn(move || {
        let current = next.take()?;
        let mut succ = current.clone();
        if next_permutation(&mut succ) {
            next = Some(succ);
        }
        Some(Permutation::new(current).expect("generated permutation"))
    })
}

fn next_permutation(v: &mut [u32]) -> bool {
    let Some(i) = v.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = v
        .iter()
        .rposition(|&x| x > v[i])
        .expect("pivot has a successor");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// Permutations of `1..=n` that are least in their dihedral orbit, in
/// lexicographic order.
pub fn orbit_representatives(n: usize) -> impl Iterator<Item = Permutation> {
    permutations(n).filter(is_orbit_representative)
}

/// Exact `M(n)`: the minimum of [`min_partition`] over every hole
/// configuration of the `n x n` grid, with the lexicographically least
/// optimal permutation.
pub fn global_min(n: usize, budget: &SearchBudget) -> Result<GlobalResult, GlobalError> {
    global_min_with(n, &SolverOptions::with_budget(*budget))
}

pub fn global_min_with(n: usize, opts: &SolverOptions) -> Result<GlobalResult, GlobalError> {
    if n == 0 || n > MAX_GLOBAL_N {
        return Err(Error::InvalidArgument(format!(
            "global search needs 1 <= n <= {MAX_GLOBAL_N}, got {n}"
        ))
        .into());
    }
    let start = Instant::now();
    let clock = Clock::new(&opts.budget);

    // Orbit representatives, cheapest certificates first. A representative
    // whose certificate already exceeds the incumbent cannot be optimal.
    let mut reps: Vec<(u32, Permutation)> = orbit_representatives(n)
        .map(|p| (root_lower_bound(&p), p))
        .collect();
    reps.sort();

    // Representatives are searched in fixed-size waves against the incumbent
    // left by the previous wave, so the work done (and the node count) does
    // not depend on how many threads share a wave.
    let mut min_count = u32::MAX;
    let mut found: Vec<(u32, Permutation)> = Vec::new();
    let mut nodes = 0u64;
    let mut searched = 0usize;
    let mut complete = true;
    for wave in reps.chunks(WAVE) {
        let incumbent = min_count;
        let visit = |(lower, perm): &(u32, Permutation)| {
            if *lower > incumbent {
                return None;
            }
            // Ties with the incumbent are kept so the least optimal
            // permutation can be picked at the end.
            let cutoff = incumbent
                .saturating_add(1)
                .min(Tiling::row_strips(perm).len() as u32 + 1);
            Some(partition_below(
                perm,
                cutoff,
                *lower,
                &clock,
                opts.transposition_table,
            ))
        };
        let parts: Vec<Option<Partition>> = if opts.parallel {
            wave.par_iter().map(visit).collect()
        } else {
            wave.iter().map(visit).collect()
        };
        for ((_, perm), part) in wave.iter().zip(parts) {
            let Some(part) = part else { continue };
            searched += 1;
            nodes += part.nodes;
            complete &= part.complete;
            if let Some(t) = part.tiling {
                let count = t.len() as u32;
                min_count = min_count.min(count);
                found.push((count, perm.clone()));
            }
        }
        if !complete {
            break;
        }
    }

    let best_perm = found
        .iter()
        .filter(|(c, _)| *c == min_count)
        .map(|(_, p)| p.clone())
        .min();

    let (best_perm, witness, min_count) = match best_perm {
        Some(perm) => {
            // Re-solve the winner on its own so the witness does not depend on
            // the cutoff it happened to be searched with.
            let solved = min_partition_with(&perm, &SolverOptions::default())
                .map_err(|_| Error::InvalidArgument("re-solve of winner failed".into()))?;
            nodes += solved.nodes;
            (perm, solved.witness, solved.min_count)
        }
        None => {
            let perm = Permutation::identity(n);
            let strips = Tiling::row_strips(&perm);
            let count = strips.len();
            (perm, strips, count)
        }
    };

    let result = GlobalResult {
        n,
        min_count,
        optimal: complete,
        best_perm,
        witness,
        nodes,
        searched,
        elapsed: start.elapsed(),
    };
    if complete {
        Ok(result)
    } else {
        Err(SearchError::BudgetExceeded(Box::new(result)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Counterexample {
    pub n: usize,
    pub predicted: u64,
    pub actual: u64,
}

/// Smallest `n` in `range` where `formula(n)` differs from `M(n)`.
pub fn refute_formula<F>(
    formula: F,
    range: RangeInclusive<usize>,
    opts: &SolverOptions,
) -> Result<Option<Counterexample>, GlobalError>
where
    F: Fn(usize) -> u64,
{
    for n in range {
        let actual = global_min_with(n, opts)?.min_count as u64;
        let predicted = formula(n);
        if predicted != actual {
            return Ok(Some(Counterexample {
                n,
                predicted,
                actual,
            }));
        }
    }
    Ok(None)
}
