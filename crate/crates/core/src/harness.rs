//! Seeded experiments and small-table reproduction.
//!
//! Trial `i` of an experiment with master seed `s` draws its permutation from
//! [`derive_seed`]`(s, i)`:
//!
//! ```text
//! mix(z)  = SplitMix64 finalizer of z + 0x9E3779B97F4A7C15
//! seed_i  = mix(s XOR mix(i))
//! ```
//!
//! and shuffles `1..=n` with ChaCha8 seeded from `seed_i` (Fisher-Yates as
//! implemented by `rand` 0.8). Reports depend only on `(n, trials, s)`.

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::fooling::{build_fanning, certify, verify_fooling_set};
use crate::grid::Permutation;
use crate::solver::{global_min_with, SearchError, SolverOptions};

/// Known values of `M(n)` for `n = 2..=8`.
pub const REPORTED_TABLE: [(usize, usize); 7] =
    [(2, 2), (3, 4), (4, 5), (5, 7), (6, 8), (7, 10), (8, 11)];

pub fn splitmix64(z: u64) -> u64 {
    let mut z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn derive_seed(master: u64, trial: u64) -> u64 {
    splitmix64(master ^ splitmix64(trial))
}

/// Uniform permutation of `1..=n`, reproducible for a given `(n, seed)`.
pub fn random_perm(n: usize, seed: u64) -> Permutation {
    assert!(n >= 1, "grid size must be positive");
    let mut map: Vec<u32> = (1..=n as u32).collect();
    map.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    Permutation::new(map).expect("shuffle preserves bijection")
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialRecord {
    pub seed: u64,
    /// Fanning set was a fooling set as built, before any repair.
    pub valid: bool,
    /// Certificate size after repair.
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub validity_rate: f64,
    pub size_min: usize,
    pub size_mean: f64,
    pub size_max: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub per_trial: Option<Vec<TrialRecord>>,
}

impl ExperimentReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for ExperimentReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={} trials={} seed={}", self.n, self.trials, self.seed)?;
        writeln!(f, "validity rate  {:.4}", self.validity_rate)?;
        write!(
            f,
            "size min/mean/max  {} / {:.2} / {}",
            self.size_min, self.size_mean, self.size_max
        )
    }
}

pub fn run_trial(n: usize, seed: u64) -> TrialRecord {
    let perm = random_perm(n, seed);
    let built = build_fanning(&perm);
    let valid = verify_fooling_set(&perm, &built)
        .expect("fanning cells avoid holes")
        .is_valid();
    TrialRecord {
        seed,
        valid,
        size: certify(&perm).size,
    }
}

pub fn run_experiment(n: usize, trials: usize, master_seed: u64) -> ExperimentReport {
    run_experiment_with(n, trials, master_seed, false)
}

/// `parallel` only changes who runs the trials; the report is identical.
pub fn run_experiment_with(
    n: usize,
    trials: usize,
    master_seed: u64,
    parallel: bool,
) -> ExperimentReport {
    assert!(trials >= 1, "need at least one trial");
    let seeds: Vec<u64> = (0..trials as u64)
        .map(|i| derive_seed(master_seed, i))
        .collect();
    let records: Vec<TrialRecord> = if parallel {
        seeds.par_iter().map(|&s| run_trial(n, s)).collect()
    } else {
        seeds.iter().map(|&s| run_trial(n, s)).collect()
    };
    let valid = records.iter().filter(|r| r.valid).count();
    let total: usize = records.iter().map(|r| r.size).sum();
    ExperimentReport {
        n,
        trials,
        seed: master_seed,
        validity_rate: valid as f64 / trials as f64,
        size_min: records.iter().map(|r| r.size).min().unwrap_or(0),
        size_mean: total as f64 / trials as f64,
        size_max: records.iter().map(|r| r.size).max().unwrap_or(0),
        per_trial: Some(records),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RowStatus {
    Match,
    Mismatch,
    /// Budget ran out; not counted as a failure.
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub n: usize,
    pub expected: usize,
    pub computed: Option<usize>,
    pub best_perm: Option<Vec<u32>>,
    pub status: RowStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableReport {
    pub rows: Vec<TableRow>,
    pub pass: bool,
}

impl TableReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for TableReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "  n  expected  computed  status")?;
        for row in &self.rows {
            let computed = row.computed.map_or("-".to_string(), |c| c.to_string());
            let status = match row.status {
                RowStatus::Match => "match",
                RowStatus::Mismatch => "MISMATCH",
                RowStatus::Skipped => "skipped",
            };
            writeln!(
                f,
                "{:>3}  {:>8}  {:>8}  {}",
                row.n, row.expected, computed, status
            )?;
        }
        write!(f, "{}", if self.pass { "PASS" } else { "FAIL" })
    }
}

/// Recomputes `M(n)` for every reported `n` up to `max_n`, each under its own
/// copy of `opts.budget`.
pub fn reproduce_table(max_n: usize, opts: &SolverOptions) -> TableReport {
    let rows: Vec<TableRow> = REPORTED_TABLE
        .iter()
        .filter(|&&(n, _)| n <= max_n)
        .map(|&(n, expected)| match global_min_with(n, opts) {
            Ok(res) => TableRow {
                n,
                expected,
                computed: Some(res.min_count),
                best_perm: Some(res.best_perm.as_slice().to_vec()),
                status: if res.min_count == expected {
                    RowStatus::Match
                } else {
                    RowStatus::Mismatch
                },
            },
            Err(SearchError::BudgetExceeded(_)) | Err(SearchError::Input(_)) => TableRow {
                n,
                expected,
                computed: None,
                best_perm: None,
                status: RowStatus::Skipped,
            },
        })
        .collect();
    let pass = rows.iter().all(|r| r.status != RowStatus::Mismatch);
    TableReport { rows, pass }
}
