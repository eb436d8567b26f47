//! Command-line front end. The `matilda` binary is a thin wrapper around
//! [`run`], which takes the output streams explicitly so tests can drive it
//! in-process.
//!
//! Exit codes: 0 success, 1 bad input, 2 verification rejected or formula
//! refuted, 3 budget exceeded.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::construct::{conjectured_min, reference_tiling_9, residue_permutation};
use crate::error::Error;
use crate::fooling::{
    certify, fanning, key_lemma_check, verify_fooling_set, Certificate, FoolingVerdict,
};
use crate::grid::{verify_tiling, Permutation, Tiling, VerifyResult};
use crate::harness::{reproduce_table, run_experiment_with, REPORTED_TABLE};
use crate::io::Document;
use crate::render::{render_fanning, render_marked, render_tiling};
use crate::solver::{
    global_min_with, min_partition_with, refute_formula, SearchBudget, SearchError, SolverOptions,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_BAD_INPUT: i32 = 1;
pub const EXIT_REJECTED: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

/// Worker-count hint; `0` or unset means rayon's default.
pub const THREADS_ENV: &str = "MATILDA_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "matilda",
    version,
    about = "Minimum tilings with one hole per row and column"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact M(n) over all hole configurations of an n x n grid.
    Solve(SolveArgs),
    /// Exact minimum tiling for one hole configuration.
    MinPartition(MinPartitionArgs),
    /// Residue-block permutation for n = k^2 and the conjectured optimum.
    Construct(ConstructArgs),
    /// Fooling-set certificate (lower bound) for one permutation.
    Certify(CertifyArgs),
    /// Check a tiling and/or a certificate.
    Verify(VerifyArgs),
    /// Fanning statistics over seeded random permutations.
    Experiment(ExperimentArgs),
    /// Recompute the small-n table, optionally testing a closed formula.
    Table(TableArgs),
    /// Draw a tiling or certificate.
    Render(RenderArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Ascii,
    Json,
}

#[derive(Debug, Args)]
pub struct BudgetArgs {
    /// Abort after exploring this many search nodes.
    #[arg(long)]
    pub budget_nodes: Option<u64>,
    /// Abort after this many seconds.
    #[arg(long)]
    pub budget_seconds: Option<f64>,
}

impl BudgetArgs {
    /// Explicit flags win; otherwise unlimited for `n <= 6` and a ten-minute
    /// cap above.
    fn budget_for(&self, n: usize) -> SearchBudget {
        if self.budget_nodes.is_none() && self.budget_seconds.is_none() {
            return if n <= 6 {
                SearchBudget::unlimited()
            } else {
                SearchBudget::time(Duration::from_secs(600))
            };
        }
        SearchBudget {
            max_nodes: self.budget_nodes,
            max_time: self.budget_seconds.map(Duration::from_secs_f64),
        }
    }
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct PermSource {
    /// Permutation document ({"n":..,"map":[..]}).
    #[arg(long)]
    pub perm_file: Option<PathBuf>,
    /// Inline permutation, e.g. 7,4,1,8,5,2,9,6,3.
    #[arg(long, value_delimiter = ',')]
    pub perm: Option<Vec<u32>>,
    /// Residue-block permutation for n = k^2.
    #[arg(long)]
    pub residue: Option<u32>,
}

impl PermSource {
    fn load(&self) -> Result<Permutation, Error> {
        if let Some(path) = &self.perm_file {
            return Permutation::from_json(&read(path)?);
        }
        if let Some(map) = &self.perm {
            return Permutation::new(map.clone());
        }
        match self.residue {
            Some(k) if k >= 1 => Ok(residue_permutation(k)),
            _ => Err(Error::InvalidArgument("--residue needs k >= 1".into())),
        }
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub budget: BudgetArgs,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct MinPartitionArgs {
    #[command(flatten)]
    pub source: PermSource,
    #[command(flatten)]
    pub budget: BudgetArgs,
    /// Enable the occupancy transposition table.
    #[arg(long)]
    pub transposition_table: bool,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[arg(long, required_unless_present = "reference_9")]
    pub k: Option<u32>,
    /// Dump the explicit 12-tile covering for n = 9 instead.
    #[arg(long, conflicts_with = "k")]
    pub reference_9: bool,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    #[command(flatten)]
    pub source: PermSource,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub perm_file: PathBuf,
    #[arg(long, required_unless_present = "cert_file")]
    pub tiling_file: Option<PathBuf>,
    #[arg(long)]
    pub cert_file: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Leave the per-trial list out of the report.
    #[arg(long)]
    pub summary_only: bool,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long, default_value_t = 6)]
    pub max_n: usize,
    /// Instead of the table, look for the first n in 2..=max-n where this
    /// formula disagrees with M(n): 2n-2, 3n/2 (floor), (3n-1)/2 (floor) or
    /// table.
    #[arg(long)]
    pub formula: Option<String>,
    #[command(flatten)]
    pub budget: BudgetArgs,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    #[arg(long)]
    pub perm_file: PathBuf,
    #[arg(
        long,
        required_unless_present = "cert_file",
        conflicts_with = "cert_file"
    )]
    pub tiling_file: Option<PathBuf>,
    #[arg(long)]
    pub cert_file: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

/// A closed-form guess for `M(n)`, by name.
pub fn named_formula(name: &str) -> Option<fn(usize) -> u64> {
    let f: fn(usize) -> u64 = match name.replace(' ', "").as_str() {
        "2n-2" => |n| 2 * n as u64 - 2,
        "3n/2" | "floor(3n/2)" => |n| 3 * n as u64 / 2,
        "(3n-1)/2" | "floor((3n-1)/2)" => |n| (3 * n as u64 - 1) / 2,
        "table" => |n| {
            REPORTED_TABLE
                .iter()
                .find(|(m, _)| *m == n)
                .map_or(0, |&(_, v)| v as u64)
        },
        _ => return None,
    };
    Some(f)
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))
}

fn solver_options(budget: SearchBudget) -> SolverOptions {
    SolverOptions {
        budget,
        transposition_table: false,
        parallel: threads_hint() != Some(1),
    }
}

fn threads_hint() -> Option<usize> {
    std::env::var(THREADS_ENV).ok()?.trim().parse().ok()
}

/// Sizes the global rayon pool from `MATILDA_THREADS`. Later calls are no-ops.
pub fn configure_threads() {
    if let Some(n) = threads_hint().filter(|&n| n > 0) {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Io<'_> {
    fn line(&mut self, text: impl AsRef<str>) {
        let _ = writeln!(self.out, "{}", text.as_ref());
    }

    fn note(&mut self, text: impl AsRef<str>) {
        let _ = writeln!(self.err, "{}", text.as_ref());
    }
}

/// Parses `args` (including the program name) and runs one command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_BAD_INPUT
            } else {
                EXIT_OK
            };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    let mut io = Io { out, err };
    match dispatch(cli.command, &mut io) {
        Ok(code) => code,
        Err(e) => {
            io.note(format!("error: {e}"));
            EXIT_BAD_INPUT
        }
    }
}

fn dispatch(command: Command, io: &mut Io) -> Result<i32, Error> {
    match command {
        Command::Solve(a) => solve(a, io),
        Command::MinPartition(a) => min_partition_cmd(a, io),
        Command::Construct(a) => construct(a, io),
        Command::Certify(a) => certify_cmd(a, io),
        Command::Verify(a) => verify(a, io),
        Command::Experiment(a) => experiment(a, io),
        Command::Table(a) => table(a, io),
        Command::Render(a) => render(a, io),
    }
}

fn solve(a: SolveArgs, io: &mut Io) -> Result<i32, Error> {
    let opts = solver_options(a.budget.budget_for(a.n));
    let (result, code) = match global_min_with(a.n, &opts) {
        Ok(r) => (r, EXIT_OK),
        Err(SearchError::BudgetExceeded(r)) => (*r, EXIT_BUDGET),
        Err(SearchError::Input(e)) => return Err(e),
    };
    io.note(format!(
        "searched {} orbit representatives, {} nodes, {:.3}s",
        result.searched,
        result.nodes,
        result.elapsed.as_secs_f64()
    ));
    match a.format {
        Format::Json => io.line(result.to_json()),
        Format::Ascii => {
            io.line(result.min_count.to_string());
            io.line(format!(
                "{} permutation {}",
                if result.optimal {
                    "optimal"
                } else {
                    "best-so-far (budget exceeded)"
                },
                result.best_perm
            ));
            io.line(render_tiling(&result.best_perm, &result.witness)?);
        }
    }
    Ok(code)
}

fn min_partition_cmd(a: MinPartitionArgs, io: &mut Io) -> Result<i32, Error> {
    let perm = a.source.load()?;
    let mut opts = solver_options(a.budget.budget_for(perm.n()));
    opts.transposition_table = a.transposition_table;
    let (result, code) = match min_partition_with(&perm, &opts) {
        Ok(r) => (r, EXIT_OK),
        Err(SearchError::BudgetExceeded(r)) => (*r, EXIT_BUDGET),
        Err(SearchError::Input(e)) => return Err(e),
    };
    io.note(format!(
        "{} nodes, {:.3}s",
        result.nodes,
        result.elapsed.as_secs_f64()
    ));
    match a.format {
        Format::Json => io.line(result.to_json()),
        Format::Ascii => {
            io.line(result.min_count.to_string());
            io.line(if result.optimal {
                "optimal"
            } else {
                "upper bound (budget exceeded)"
            });
            io.line(render_tiling(&perm, &result.witness)?);
        }
    }
    Ok(code)
}

fn construct(a: ConstructArgs, io: &mut Io) -> Result<i32, Error> {
    if a.reference_9 {
        let (perm, tiling) = reference_tiling_9();
        match a.format {
            Format::Json => io.line(
                serde_json::to_string_pretty(&json!({
                    "permutation": serde_json::from_str::<serde_json::Value>(&perm.to_json()).expect("json"),
                    "tiling": serde_json::from_str::<serde_json::Value>(&tiling.to_json()).expect("json"),
                }))
                .expect("json"),
            ),
            Format::Ascii => {
                io.line(format!("permutation {perm}, {} tiles", tiling.len()));
                io.line(render_tiling(&perm, &tiling)?);
            }
        }
        return Ok(EXIT_OK);
    }

    let k = a.k.expect("clap enforces --k");
    if k == 0 {
        return Err(Error::InvalidArgument("--k must be at least 1".into()));
    }
    let perm = residue_permutation(k);
    let formula = conjectured_min(k as u64);
    // Small cases are cheap to confirm with the exact solver.
    let solved = if k <= 3 {
        Some(
            min_partition_with(&perm, &SolverOptions::default())
                .map_err(|e| Error::InvalidArgument(e.to_string()))?,
        )
    } else {
        None
    };
    match a.format {
        Format::Json => {
            let value =
                |text: String| serde_json::from_str::<serde_json::Value>(&text).expect("json");
            io.line(
                serde_json::to_string_pretty(&json!({
                    "k": k,
                    "permutation": value(perm.to_json()),
                    "conjectured_min": formula,
                    "solver_min": solved.as_ref().map(|s| s.min_count),
                    "tiling": solved.as_ref().map(|s| value(s.witness.to_json())),
                }))
                .expect("json"),
            );
        }
        Format::Ascii => {
            io.line(format!("k={k} n={} permutation {perm}", perm.n()));
            match formula {
                Some(m) => io.line(format!("conjectured minimum k^2+2k-3 = {m}")),
                None => io.line("conjectured minimum: formula defined for k >= 2"),
            }
            if let Some(s) = &solved {
                io.line(format!("solver minimum {}", s.min_count));
                io.line(render_tiling(&perm, &s.witness)?);
            }
        }
    }
    Ok(EXIT_OK)
}

fn certify_cmd(a: CertifyArgs, io: &mut Io) -> Result<i32, Error> {
    let perm = a.source.load()?;
    let cert = certify(&perm);
    match a.format {
        Format::Json => io.line(cert.to_json()),
        Format::Ascii => {
            io.line(format!(
                "size {} (target {}), {}",
                cert.size,
                cert.target,
                if cert.valid { "valid" } else { "INVALID" }
            ));
            if perm.n() >= 2 {
                io.line(render_fanning(&perm, &fanning(&perm))?);
            } else {
                io.line(render_marked(&perm, &cert.cells)?);
            }
        }
    }
    Ok(if cert.valid { EXIT_OK } else { EXIT_REJECTED })
}

fn verify(a: VerifyArgs, io: &mut Io) -> Result<i32, Error> {
    let perm = Permutation::from_json(&read(&a.perm_file)?)?;
    let mut report = serde_json::Map::new();
    let mut ok = true;
    let mut tiling = None;
    if let Some(path) = &a.tiling_file {
        let t = Tiling::from_json(&read(path)?)?;
        match verify_tiling(&perm, &t)? {
            VerifyResult::Accept => {
                io.note(format!("tiling: accept ({} tiles)", t.len()));
                report.insert(
                    "tiling".into(),
                    json!({"result": "accept", "tiles": t.len()}),
                );
            }
            VerifyResult::Reject(v) => {
                ok = false;
                io.note(format!("tiling: reject, {v}"));
                report.insert(
                    "tiling".into(),
                    json!({"result": "reject", "clause": v.clause(), "detail": v.to_string()}),
                );
            }
        }
        tiling = Some(t);
    }
    if let Some(path) = &a.cert_file {
        let cert = Certificate::from_json(&read(path)?)?;
        if cert.perm != perm {
            return Err(Error::InvalidArgument(
                "certificate is for a different permutation".into(),
            ));
        }
        let verdict = verify_fooling_set(&perm, &cert.cells)?;
        let entry = match verdict {
            FoolingVerdict::Valid if cert.valid => json!({"result": "valid", "size": cert.size}),
            FoolingVerdict::Valid => {
                ok = false;
                json!({"result": "flag mismatch", "size": cert.size})
            }
            FoolingVerdict::Counterexample(x, y) => {
                ok = false;
                json!({"result": "counterexample", "pair": [x, y]})
            }
        };
        io.note(format!("certificate: {}", entry["result"]));
        report.insert("certificate".into(), entry);
        if let (true, Some(t)) = (ok, &tiling) {
            let lemma = key_lemma_check(&perm, &cert, t);
            if let Err(e) = &lemma {
                ok = false;
                io.note(format!("lemma: {e}"));
            }
            report.insert("lemma".into(), json!(lemma.is_ok()));
        }
    }
    match a.format {
        Format::Json => io.line(serde_json::to_string_pretty(&report).expect("json")),
        Format::Ascii => {
            if let Some(t) = report.get("tiling") {
                io.line(match t["result"].as_str() {
                    Some("accept") => "Accept".to_string(),
                    _ => format!("Reject: {}", t["detail"].as_str().unwrap_or_default()),
                });
            }
            if let Some(c) = report.get("certificate") {
                io.line(format!(
                    "Certificate: {}",
                    c["result"].as_str().unwrap_or_default()
                ));
            }
            if let Some(l) = report.get("lemma") {
                io.line(format!(
                    "Lemma: {}",
                    if l.as_bool() == Some(true) {
                        "holds"
                    } else {
                        "VIOLATED"
                    }
                ));
            }
        }
    }
    Ok(if ok { EXIT_OK } else { EXIT_REJECTED })
}

fn experiment(a: ExperimentArgs, io: &mut Io) -> Result<i32, Error> {
    if a.n == 0 || a.trials == 0 {
        return Err(Error::InvalidArgument("need n >= 1 and trials >= 1".into()));
    }
    let mut report = run_experiment_with(a.n, a.trials, a.seed, threads_hint() != Some(1));
    if a.summary_only {
        report.per_trial = None;
    }
    match a.format {
        Format::Json => io.line(report.to_json()),
        Format::Ascii => io.line(report.to_string()),
    }
    Ok(EXIT_OK)
}

fn table(a: TableArgs, io: &mut Io) -> Result<i32, Error> {
    if let Some(name) = &a.formula {
        let formula = named_formula(name)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown formula `{name}`")))?;
        let opts = solver_options(a.budget.budget_for(a.max_n));
        let found = match refute_formula(formula, 2..=a.max_n, &opts) {
            Ok(found) => found,
            Err(SearchError::BudgetExceeded(_)) => {
                io.note("budget exceeded before a verdict");
                return Ok(EXIT_BUDGET);
            }
            Err(SearchError::Input(e)) => return Err(e),
        };
        match a.format {
            Format::Json => io.line(
                serde_json::to_string_pretty(&json!({
                    "formula": name,
                    "range": [2, a.max_n],
                    "counterexample": found.map(|c| json!({"n": c.n, "predicted": c.predicted, "actual": c.actual})),
                }))
                .expect("json"),
            ),
            Format::Ascii => io.line(match found {
                Some(c) => format!("refuted at n={}: formula gives {}, exact search gives {}", c.n, c.predicted, c.actual),
                None => format!("no counterexample for n in 2..={}", a.max_n),
            }),
        }
        return Ok(if found.is_some() {
            EXIT_REJECTED
        } else {
            EXIT_OK
        });
    }

    let opts = solver_options(a.budget.budget_for(a.max_n));
    let report = reproduce_table(a.max_n, &opts);
    match a.format {
        Format::Json => io.line(report.to_json()),
        Format::Ascii => io.line(report.to_string()),
    }
    Ok(if report.pass { EXIT_OK } else { EXIT_REJECTED })
}

fn render(a: RenderArgs, io: &mut Io) -> Result<i32, Error> {
    let perm = Permutation::from_json(&read(&a.perm_file)?)?;
    let text = match (&a.tiling_file, &a.cert_file) {
        (Some(path), _) => render_tiling(&perm, &Tiling::from_json(&read(path)?)?)?,
        (None, Some(path)) => {
            let cert = Certificate::from_json(&read(path)?)?;
            render_marked(&perm, &cert.cells)?
        }
        (None, None) => unreachable!("clap requires one source"),
    };
    match a.format {
        Format::Json => io.line(
            serde_json::to_string_pretty(&json!({"lines": text.lines().collect::<Vec<_>>()}))
                .expect("json"),
        ),
        Format::Ascii => io.line(text),
    }
    Ok(EXIT_OK)
}
