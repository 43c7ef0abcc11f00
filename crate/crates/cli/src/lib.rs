//! Argument handling, matrix loading and report rendering for the `diagvar`
//! binary. [`run_command`] does all the work and returns what to print, so
//! tests can drive it without spawning a process.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::Value;

use diagvar::diagvariety::{SpecLabel, TildeMode};
use diagvar::polymatrix::PolyMatrix;
use diagvar::polyring::{parse_poly, MvPolynomial, VarContext};
use diagvar::report::{
    error_record, lemma4_record_for_matrix, pofx_record_for_matrix, run_cell, suite_cells, Cell,
    CheckError, CheckKind, CheckRecord,
};
use diagvar::scalar::{is_prime, Integers};
use diagvar::{Guard, IntMatrix, ZPolyMatrix};

/// Environment variable capping suite parallelism; `0` or unset means one
/// thread per core.
pub const THREADS_ENV: &str = "DIAGVAR_THREADS";

const DEFAULT_PRIMES: [u64; 4] = [2, 3, 5, 7];

#[derive(Debug, Parser)]
#[command(name = "diagvar", version)]
#[command(about = "Exact checks on the matrix-of-diagonals polynomial P(X)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Row,
    Column,
    Both,
}

impl From<ModeArg> for TildeMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Row => TildeMode::Row,
            ModeArg::Column => TildeMode::Column,
            ModeArg::Both => TildeMode::Both,
        }
    }
}

#[derive(Debug, Args)]
struct Output {
    /// Report format.
    #[arg(long, value_enum, default_value = "text")]
    format: Format,

    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Lift size and prime budgets; forced records are marked in the report.
    #[arg(long)]
    force: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute P(X) for the generic matrix, a named specialization, or a matrix file
    Pofx {
        #[arg(long, required_unless_present = "matrix", conflicts_with = "matrix")]
        n: Option<usize>,
        /// S, S0, sop, tilde-row, tilde-column or tilde-both.
        #[arg(long, value_parser = parse_spec, conflicts_with = "matrix")]
        spec: Option<SpecLabel>,
        /// JSON polynomial matrix.
        #[arg(long)]
        matrix: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Block factorization of P through the characteristic polynomial
    Lemma2 {
        #[arg(long)]
        n: usize,
        /// Defaults to all three modes.
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        #[command(flatten)]
        output: Output,
    },
    /// Induction-step identity for the anti-diagonal kill
    Induction {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Coefficient of the product of entries above the anti-diagonal
    Antidiag {
        #[arg(long)]
        n: usize,
        /// S or S0; defaults to both.
        #[arg(long, value_parser = parse_spec)]
        spec: Option<SpecLabel>,
        #[command(flatten)]
        output: Output,
    },
    /// P under the parameter-system specialization
    Sop {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Fedder's criterion for the S-specialized hypersurface
    Fedder {
        #[arg(long)]
        n: usize,
        #[arg(long, conflicts_with = "primes")]
        p: Option<u64>,
        /// Comma-separated; defaults to 2,3,5,7.
        #[arg(long, value_delimiter = ',')]
        primes: Option<Vec<u64>>,
        #[command(flatten)]
        output: Output,
    },
    /// Diagonal-span equivalences for A_n or a unimodular matrix file
    Lemma4 {
        #[arg(long, required_unless_present = "matrix", conflicts_with = "matrix")]
        n: Option<usize>,
        /// JSON integer matrix.
        #[arg(long)]
        matrix: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Closed forms for the inverse of A_n and its odd powers
    Lemma5 {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Every check over a range of sizes and primes
    Suite {
        #[arg(long, default_value_t = 5)]
        max_n: usize,
        #[arg(long, value_delimiter = ',')]
        primes: Option<Vec<u64>>,
        /// Comma-separated subset of checks; defaults to all.
        #[arg(long, value_delimiter = ',', value_parser = parse_check)]
        checks: Option<Vec<CheckKind>>,
        #[command(flatten)]
        output: Output,
    },
}

fn parse_spec(s: &str) -> Result<SpecLabel, String> {
    s.parse::<SpecLabel>().map_err(|e| e.to_string())
}

fn parse_check(s: &str) -> Result<CheckKind, String> {
    s.parse()
}

/// What the process should print and its exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub exit: u8,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(msg: impl std::fmt::Display) -> Self {
        Outcome {
            exit: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {msg}")]
    File { path: String, msg: String },
    #[error(transparent)]
    Check(#[from] CheckError),
    #[error("{0}")]
    Usage(String),
}

/// A matrix read from disk.
#[derive(Debug, Clone, PartialEq)]
pub enum LoadedMatrix {
    Poly(ZPolyMatrix),
    Int(IntMatrix),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixKind {
    Poly,
    Int,
}

/// Reads a matrix file.
///
/// Integer files are `{"n": …, "entries": [[…]]}` with numbers or decimal
/// strings. Polynomial files have the same shape with entries written as
/// polynomials in `x_i_j` (or in the names listed under an optional
/// `"vars"` key).
pub fn load_matrix(path: &Path, kind: MatrixKind) -> Result<LoadedMatrix, CliError> {
    let file_err = |msg: String| CliError::File {
        path: path.display().to_string(),
        msg,
    };
    let text = fs::read_to_string(path).map_err(|e| file_err(e.to_string()))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| file_err(e.to_string()))?;
    match kind {
        MatrixKind::Int => IntMatrix::from_json(&v)
            .map(LoadedMatrix::Int)
            .map_err(|e| file_err(e.to_string())),
        MatrixKind::Poly => poly_matrix_from_json(&v)
            .map(LoadedMatrix::Poly)
            .map_err(file_err),
    }
}

fn poly_matrix_from_json(v: &Value) -> Result<ZPolyMatrix, String> {
    let obj = v.as_object().ok_or("expected an object")?;
    let rows = obj
        .get("entries")
        .and_then(Value::as_array)
        .ok_or("missing `entries` array")?;
    let n = rows.len();
    if n == 0 {
        return Err("`entries` is empty".into());
    }
    if let Some(declared) = obj.get("n") {
        if declared.as_u64() != Some(n as u64) {
            return Err(format!("`n` is {declared} but there are {n} rows"));
        }
    }
    let ctx = match obj.get("vars") {
        None => VarContext::matrix_arc(n),
        Some(vars) => {
            let names = vars
                .as_array()
                .and_then(|a| a.iter().map(Value::as_str).collect::<Option<Vec<_>>>())
                .ok_or("`vars` must be an array of strings")?;
            Arc::new(VarContext::new(names).map_err(|e| format!("vars: {e}"))?)
        }
    };
    let mut parsed = Vec::with_capacity(n);
    for (i, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| format!("row {} is not an array", i + 1))?;
        if row.len() != n {
            return Err(format!("row {} has {} entries, expected {n}", i + 1, row.len()));
        }
        let mut out = Vec::with_capacity(n);
        for (j, e) in row.iter().enumerate() {
            let text = match e {
                Value::String(s) => s.clone(),
                Value::Number(x) if x.is_i64() || x.is_u64() => x.to_string(),
                _ => return Err(format!("entry ({}, {}) must be a string or integer", i + 1, j + 1)),
            };
            let p: MvPolynomial<Integers> = parse_poly(&text, &ctx, Integers::new())
                .map_err(|e| format!("entry ({}, {}): {e}", i + 1, j + 1))?;
            out.push(p);
        }
        parsed.push(out);
    }
    PolyMatrix::from_rows(parsed).map_err(|e| e.to_string())
}

fn check_primes(primes: &[u64]) -> Result<(), CliError> {
    match primes.iter().find(|&&p| !is_prime(p)) {
        Some(p) => Err(CliError::Usage(format!("--primes: {p} is not prime"))),
        None if primes.is_empty() => Err(CliError::Usage("--primes: empty list".into())),
        None => Ok(()),
    }
}

fn thread_count() -> Result<usize, CliError> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(0),
        Ok(s) => s.trim().parse().map_err(|_| {
            CliError::Usage(format!("{THREADS_ENV} must be a non-negative integer, got `{s}`"))
        }),
    }
}

/// Runs cells in parallel; the result order is the cell order.
fn run_cells(cells: &[Cell], guard: Guard) -> Result<Vec<CheckRecord>, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(thread_count()?)
        .build()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(pool.install(|| {
        cells
            .par_iter()
            .map(|c| run_cell(c, guard).unwrap_or_else(|e| error_record(c, &e)))
            .collect()
    }))
}

/// Runs cells one by one, stopping at the first error.
fn run_each(cells: &[Cell], guard: Guard) -> Result<Vec<CheckRecord>, CliError> {
    cells.iter().map(|c| Ok(run_cell(c, guard)?)).collect()
}

fn guard_of(o: &Output) -> Guard {
    if o.force {
        Guard::Force
    } else {
        Guard::Enforce
    }
}

fn text_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "none".into(),
        other => other.to_string(),
    }
}

/// One line per record: verdict, check, size, prime, then detail fields in
/// key order.
pub fn render_text(records: &[CheckRecord]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(if r.pass { "PASS" } else { "FAIL" });
        out.push(' ');
        out.push_str(r.check);
        out.push_str(&format!(" n={}", r.n));
        if let Some(p) = r.p {
            out.push_str(&format!(" p={p}"));
        }
        if let Value::Object(map) = &r.detail {
            let sorted: BTreeMap<_, _> = map.iter().collect();
            for (k, v) in sorted {
                if k == "polynomial" {
                    continue;
                }
                out.push_str(&format!(" {k}={}", text_value(v)));
            }
        }
        out.push('\n');
    }
    if records.len() > 1 {
        let passed = records.iter().filter(|r| r.pass).count();
        out.push_str(&format!("{passed}/{} checks passed\n", records.len()));
    }
    out
}

pub fn render_json(records: &[CheckRecord]) -> String {
    let mut s = serde_json::to_string_pretty(records).expect("records serialize");
    s.push('\n');
    s
}

fn emit(records: &[CheckRecord], text: Option<String>, output: &Output, notes: &[String]) -> Outcome {
    let body = match output.format {
        Format::Json => render_json(records),
        Format::Text => text.unwrap_or_else(|| render_text(records)),
    };
    let mut stderr: String = notes.iter().map(|n| format!("note: {n}\n")).collect();
    let stdout = match &output.out {
        Some(path) => match fs::write(path, &body) {
            Ok(()) => String::new(),
            Err(e) => {
                stderr.push_str(&format!("error: {}: {e}\n", path.display()));
                return Outcome {
                    exit: 2,
                    stdout: String::new(),
                    stderr,
                };
            }
        },
        None => body,
    };
    Outcome {
        exit: if records.iter().all(|r| r.pass) { 0 } else { 1 },
        stdout,
        stderr,
    }
}

fn error_outcome(e: CliError) -> Outcome {
    match &e {
        CliError::Check(c) if c.is_guard() => {
            Outcome::usage(format!("{e} (pass --force to override)"))
        }
        _ => Outcome::usage(e),
    }
}

/// Parses `argv` (program name first) and executes the subcommand.
///
/// Exit status: 0 when every record passes, 1 when any check fails, 2 for
/// usage errors, unreadable input and budget violations.
pub fn run_command<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    exit: 2,
                    stdout: String::new(),
                    stderr: rendered,
                }
            } else {
                Outcome {
                    exit: 0,
                    stdout: rendered,
                    stderr: String::new(),
                }
            };
        }
    };
    dispatch(cli.command).unwrap_or_else(error_outcome)
}

fn dispatch(command: Command) -> Result<Outcome, CliError> {
    match command {
        Command::Pofx { n, spec, matrix, output } => {
            let guard = guard_of(&output);
            let record = match (n, matrix) {
                (_, Some(path)) => match load_matrix(&path, MatrixKind::Poly)? {
                    LoadedMatrix::Poly(m) => pofx_record_for_matrix(&m, guard)?,
                    LoadedMatrix::Int(_) => unreachable!("asked for a polynomial matrix"),
                },
                (Some(n), None) => {
                    let mut cell = Cell::new(CheckKind::Pofx, n);
                    cell.spec = spec;
                    run_cell(&cell, guard)?
                }
                (None, None) => return Err(CliError::Usage("pofx needs --n or --matrix".into())),
            };
            let text = format!("{}\n", text_value(&record.detail["polynomial"]));
            Ok(emit(&[record], Some(text), &output, &[]))
        }
        Command::Lemma2 { n, mode, output } => {
            let modes: Vec<TildeMode> = match mode {
                Some(m) => vec![m.into()],
                None => TildeMode::ALL.to_vec(),
            };
            let cells: Vec<Cell> = modes
                .into_iter()
                .map(|m| Cell::new(CheckKind::Lemma2, n).with_mode(m))
                .collect();
            let records = run_each(&cells, guard_of(&output))?;
            Ok(emit(&records, None, &output, &[]))
        }
        Command::Induction { n, output } => single(Cell::new(CheckKind::Induction, n), &output),
        Command::Sop { n, output } => single(Cell::new(CheckKind::Sop, n), &output),
        Command::Lemma5 { n, output } => single(Cell::new(CheckKind::Lemma5, n), &output),
        Command::Antidiag { n, spec, output } => {
            let specs = match spec {
                Some(s @ (SpecLabel::KillS | SpecLabel::KillS0)) => vec![s],
                Some(other) => {
                    return Err(CliError::Usage(format!("--spec: antidiag takes S or S0, not {other}")))
                }
                None => vec![SpecLabel::KillS, SpecLabel::KillS0],
            };
            let cells: Vec<Cell> = specs
                .into_iter()
                .map(|s| Cell::new(CheckKind::Antidiag, n).with_spec(s))
                .collect();
            let records = run_each(&cells, guard_of(&output))?;
            Ok(emit(&records, None, &output, &[]))
        }
        Command::Fedder { n, p, primes, output } => {
            let guard = guard_of(&output);
            let (primes, explicit) = match (p, primes) {
                (Some(p), _) => (vec![p], true),
                (None, Some(ps)) => (ps, true),
                (None, None) => (DEFAULT_PRIMES.to_vec(), false),
            };
            check_primes(&primes)?;
            let mut notes = Vec::new();
            let mut cells = Vec::new();
            for &p in &primes {
                let in_budget = diagvar::diagvariety::fedder_cell_in_budget(n, p);
                if in_budget || explicit || guard.is_forced() {
                    cells.push(Cell::new(CheckKind::Fedder, n).with_p(p));
                } else {
                    notes.push(format!("fedder: (n={n}, p={p}) skipped (use --force)"));
                }
            }
            let records = run_each(&cells, guard)?;
            Ok(emit(&records, None, &output, &notes))
        }
        Command::Lemma4 { n, matrix, output } => {
            let guard = guard_of(&output);
            let record = match (n, matrix) {
                (_, Some(path)) => match load_matrix(&path, MatrixKind::Int)? {
                    LoadedMatrix::Int(a) => lemma4_record_for_matrix(&a, guard)?,
                    LoadedMatrix::Poly(_) => unreachable!("asked for an integer matrix"),
                },
                (Some(n), None) => run_cell(&Cell::new(CheckKind::Lemma4, n), guard)?,
                (None, None) => return Err(CliError::Usage("lemma4 needs --n or --matrix".into())),
            };
            Ok(emit(&[record], None, &output, &[]))
        }
        Command::Suite { max_n, primes, checks, output } => {
            let guard = guard_of(&output);
            let primes = primes.unwrap_or_else(|| DEFAULT_PRIMES.to_vec());
            check_primes(&primes)?;
            let checks = checks.unwrap_or_else(|| CheckKind::ALL.to_vec());
            let (cells, notes) = suite_cells(&checks, max_n, &primes, guard);
            if cells.is_empty() {
                return Err(CliError::Usage(format!("no checks apply up to --max-n {max_n}")));
            }
            let records = run_cells(&cells, guard)?;
            Ok(emit(&records, None, &output, &notes))
        }
    }
}

fn single(cell: Cell, output: &Output) -> Result<Outcome, CliError> {
    let record = run_cell(&cell, guard_of(output))?;
    Ok(emit(&[record], None, output, &[]))
}
