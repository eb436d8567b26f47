//! Minimum rectangle tilings of an `n x n` grid that leave exactly one
//! uncovered square in every row and every column.
//!
//! The uncovered squares ("holes") form a permutation matrix: row `i` keeps
//! its hole at column `perm(i)`. This crate attacks the minimum tile count
//! from both sides:
//!
//! - [`solver`]: exact branch-and-bound for one permutation
//!   ([`min_partition`]) and over all permutations ([`global_min`]).
//! - [`construct`]: the residue-block permutations for `n = k^2` and the
//!   conjectured optimum `k^2 + 2k - 3` (2112 for `n = 2025`).
//! - [`fooling`]: fooling-set certificates built by fanning out from the
//!   longest increasing and decreasing chains; their size is a lower bound.
//! - [`harness`]: seeded random-permutation experiments and table checks.
//!
//! [`grid`], [`io`] and [`render`] hold the shared vocabulary, JSON documents
//! and text pictures; [`cli`] backs the `matilda` binary.
//!
//! Runnable walkthroughs live in `examples/`:
//!
//! ```text
//! cargo run --release --example verify_reference    # 9x9 covering, drawn and checked
//! cargo run --release --example small_table         # M(n) for n = 2..6
//! cargo run --release --example refute_conjectures  # 2n-2 and 3n/2 fail
//! cargo run --release --example residue_blocks      # k^2 + 2k - 3 for k = 2, 3, 4
//! cargo run --release --example certify_residue     # size-32 certificate for n = 25
//! cargo run --release --example random_fanning      # statistics over random permutations
//! cargo run --release --example symmetry            # dihedral invariance of the optimum
//! ```

pub mod bitgrid;
pub mod chains;
pub mod cli;
pub mod construct;
pub mod error;
pub mod fooling;
pub mod grid;
pub mod harness;
pub mod io;
pub mod render;
pub mod solver;

pub use chains::{lds, lis, Chain, ChainKind};
pub use construct::{conjectured_min, reference_tiling_9, residue_permutation};
pub use error::{Error, Result};
pub use fooling::{
    build_fanning, certify, key_lemma_check, verify_fooling_set, Certificate, FoolingVerdict,
    MarkedSet,
};
pub use grid::{
    rect_contains, rects_overlap, verify_tiling, Cell, Permutation, Rect, Symmetry, Tiling,
    VerifyResult,
};
pub use harness::{random_perm, run_experiment, ExperimentReport};
pub use io::Document;
pub use solver::{global_min, min_partition, SearchBudget, SolveResult};
