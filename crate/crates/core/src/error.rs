use thiserror::Error;

use crate::grid::{Cell, Rect};

/// Input and contract errors shared by every module.
///
/// Verification outcomes (a rejected tiling, a fooling-set counterexample) are
/// not errors; they are ordinary return values. Errors here mean the question
/// itself was malformed.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not a bijection: {0}")]
    NotABijection(String),

    #[error("invalid rectangle rows {r1}..={r2}, cols {c1}..={c2}")]
    InvalidRect { r1: u32, r2: u32, c1: u32, c2: u32 },

    #[error("grid size mismatch: expected n={expected}, found n={found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("grid size n={n} exceeds the supported limit of {max}")]
    GridTooLarge { n: usize, max: usize },

    #[error("cell ({}, {}) lies outside the {n}x{n} grid", .cell.row, .cell.col)]
    CellOutOfGrid { cell: Cell, n: usize },

    #[error("cell ({}, {}) is a hole", .cell.row, .cell.col)]
    CellOnHole { cell: Cell },

    #[error("cell ({}, {}) appears more than once", .cell.row, .cell.col)]
    DuplicateCell { cell: Cell },

    #[error("{kind}: line {line}, column {column}: {message}")]
    Parse {
        kind: &'static str,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("certificate is not a valid fooling set")]
    InvalidCertificate,

    #[error("tiling does not verify: {0}")]
    TilingRejected(String),

    #[error("fooling-set lemma violated: tile {rect:?} holds marked cells {a:?} and {b:?}")]
    LemmaViolated { rect: Rect, a: Cell, b: Cell },

    #[error("fooling-set lemma violated: {tiles} tiles but certificate size {size}")]
    LemmaCountViolated { tiles: usize, size: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
