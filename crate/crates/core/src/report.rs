//! Check records: one named verification at one size (and prime), with a
//! pass flag and a JSON detail object.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed};
use serde::Serialize;
use serde_json::{json, Value};

use crate::diagvariety::{
    self, DiagError, SpecLabel, TildeMode, GENERIC_P_MAX_N,
};
use crate::guard::{Guard, GuardError};
use crate::intlattice::{self, IntMatrix, LatticeError, LEMMA4_MAX_N, LEMMA5_MAX_N};
use crate::polymatrix::PolyMatrix;
use crate::scalar::Integers;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckKind {
    Pofx,
    Lemma2,
    Induction,
    Antidiag,
    Sop,
    Fedder,
    Lemma4,
    Lemma5,
}

impl CheckKind {
    pub const ALL: [CheckKind; 8] = [
        CheckKind::Pofx,
        CheckKind::Lemma2,
        CheckKind::Induction,
        CheckKind::Antidiag,
        CheckKind::Sop,
        CheckKind::Fedder,
        CheckKind::Lemma4,
        CheckKind::Lemma5,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Pofx => "pofx",
            CheckKind::Lemma2 => "lemma2",
            CheckKind::Induction => "induction",
            CheckKind::Antidiag => "antidiag",
            CheckKind::Sop => "sop",
            CheckKind::Fedder => "fedder",
            CheckKind::Lemma4 => "lemma4",
            CheckKind::Lemma5 => "lemma5",
        }
    }

    /// Sizes accepted without `--force`.
    pub fn size_range(self) -> (usize, usize) {
        match self {
            CheckKind::Pofx => (1, GENERIC_P_MAX_N),
            CheckKind::Lemma2 => (2, 5),
            CheckKind::Induction => (3, 6),
            CheckKind::Antidiag | CheckKind::Sop => (2, 6),
            CheckKind::Fedder => (2, 5),
            CheckKind::Lemma4 => (1, LEMMA4_MAX_N),
            CheckKind::Lemma5 => (2, LEMMA5_MAX_N),
        }
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        CheckKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown check `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CheckError {
    #[error(transparent)]
    Diag(#[from] DiagError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Guard(#[from] GuardError),
}

impl CheckError {
    /// True for size-budget violations.
    pub fn is_guard(&self) -> bool {
        matches!(
            self,
            CheckError::Guard(_)
                | CheckError::Diag(DiagError::Guard(_))
                | CheckError::Diag(DiagError::UnsupportedPrime { .. })
                | CheckError::Diag(DiagError::Matrix(crate::polymatrix::MatrixError::Guard(_)))
                | CheckError::Lattice(LatticeError::Guard(_))
        )
    }
}

/// One verification outcome, as written to reports.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub check: &'static str,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    pub pass: bool,
    pub detail: Value,
}

/// A unit of work in a verification run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cell {
    pub kind: CheckKind,
    pub n: usize,
    pub p: Option<u64>,
    pub mode: Option<TildeMode>,
    pub spec: Option<SpecLabel>,
}

impl Cell {
    pub fn new(kind: CheckKind, n: usize) -> Self {
        Cell {
            kind,
            n,
            p: None,
            mode: None,
            spec: None,
        }
    }

    pub fn with_p(mut self, p: u64) -> Self {
        self.p = Some(p);
        self
    }

    pub fn with_mode(mut self, mode: TildeMode) -> Self {
        self.mode = Some(mode);
        self
    }

    pub fn with_spec(mut self, spec: SpecLabel) -> Self {
        self.spec = Some(spec);
        self
    }

    fn variant_rank(&self) -> u8 {
        match (self.mode, self.spec) {
            (Some(m), _) => m as u8,
            (_, Some(SpecLabel::KillS)) => 0,
            (_, Some(SpecLabel::KillS0)) => 1,
            (_, Some(_)) => 2,
            _ => 0,
        }
    }

    /// Canonical report order: check, then `n`, then `p`, then mode/spec.
    pub fn order_key(&self) -> (CheckKind, usize, Option<u64>, u8) {
        (self.kind, self.n, self.p, self.variant_rank())
    }
}

impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cell {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order_key().cmp(&other.order_key())
    }
}

fn spec_name(s: Option<SpecLabel>) -> String {
    s.map_or_else(|| "generic".to_string(), |s| s.to_string())
}

fn mark_forced(detail: &mut Value, guard: Guard) {
    if guard.is_forced() {
        detail["forced"] = Value::Bool(true);
    }
}

/// Runs one cell.
pub fn run_cell(cell: &Cell, guard: Guard) -> Result<CheckRecord, CheckError> {
    let n = cell.n;
    let (pass, mut detail) = match cell.kind {
        CheckKind::Pofx => {
            let p = diagvariety::specialized_p(n, cell.spec, guard)?;
            pofx_detail(&p, n, cell.spec)
        }
        CheckKind::Lemma2 => {
            let mode = cell.mode.unwrap_or(TildeMode::Both);
            let holds = diagvariety::verify_block_charpoly_factorization(n, mode, guard)?;
            (holds, json!({ "mode": mode.as_str() }))
        }
        CheckKind::Induction => {
            let out = diagvariety::verify_induction_identity(n, guard)?;
            (
                out.holds,
                json!({
                    "stated_sign": out.stated_sign,
                    "holds_up_to_sign": out.holds_up_to_sign(),
                    "exact_sign": out.exact_sign(),
                }),
            )
        }
        CheckKind::Antidiag => {
            let spec = cell.spec.unwrap_or(SpecLabel::KillS);
            let c = diagvariety::antidiag_unit_coeff(n, spec, guard)?;
            let coeff = i64::try_from(&c).map(Value::from).unwrap_or_else(|_| Value::from(c.to_string()));
            (c.abs().is_one(), json!({ "spec": spec.to_string(), "coefficient": coeff }))
        }
        CheckKind::Sop => {
            let s = diagvariety::sop_normal_form(n, guard)?;
            (
                s.exponent == diagvariety::p_degree(n),
                json!({ "sign": s.sign, "exponent": s.exponent }),
            )
        }
        CheckKind::Fedder => {
            let p = cell.p.ok_or_else(|| {
                CheckError::Diag(DiagError::InvalidSpecialization("fedder needs a prime".into()))
            })?;
            let out = diagvariety::check_fpure(n, p, guard)?;
            let ctx = diagvariety::surviving_context(n);
            let witness = out.verdict.witness.as_ref().map(|m| {
                crate::polyring::MvPolynomial::from_terms(
                    ctx.clone(),
                    Integers::new(),
                    vec![(m.clone(), num_bigint::BigInt::one())],
                )
                .map(|w| w.to_string())
                .unwrap_or_default()
            });
            (
                out.verdict.fpure,
                json!({
                    "fpure": out.verdict.fpure,
                    "witness": witness,
                    "var_count": out.verdict.var_count,
                    "squarefree_shortcut": out.squarefree_shortcut,
                }),
            )
        }
        CheckKind::Lemma4 => {
            guard.check("lemma4", n, 1, LEMMA4_MAX_N)?;
            let a = intlattice::anti_triangular_ones(n);
            let (pass, mut d) = lemma4_detail(&a, guard)?;
            d["matrix"] = Value::from("anti-triangular ones");
            (pass, d)
        }
        CheckKind::Lemma5 => {
            let r = intlattice::verify_lemma5_formulas_guarded(n, n - 1, guard)?;
            let mut d = serde_json::to_value(&r).expect("serializable");
            d["j_max"] = Value::from(n - 1);
            (r.passes(), d)
        }
    };
    mark_forced(&mut detail, guard);
    Ok(CheckRecord {
        check: cell.kind.name(),
        n,
        p: cell.p,
        pass,
        detail,
    })
}

fn pofx_detail(p: &crate::ZPoly, n: usize, spec: Option<SpecLabel>) -> (bool, Value) {
    let degree = p.homogeneous_degree().ok().flatten();
    let expected = diagvariety::p_degree(n);
    let pass = match spec {
        None => degree == Some(expected),
        // Specializations may kill P or leave it homogeneous of the same degree.
        Some(_) => p.is_zero() || degree == Some(expected),
    };
    (
        pass,
        json!({
            "spec": spec_name(spec),
            "terms": p.num_terms(),
            "degree": degree,
            "polynomial": p.to_string(),
        }),
    )
}

fn lemma4_detail(a: &IntMatrix, guard: Guard) -> Result<(bool, Value), CheckError> {
    let r = intlattice::lemma4_check_guarded(a, guard)?;
    let pass = r.a == r.b && (!r.a || r.d);
    Ok((pass, serde_json::to_value(&r).expect("serializable")))
}

/// `P` of an explicit polynomial matrix.
pub fn pofx_record_for_matrix(
    m: &PolyMatrix<Integers>,
    guard: Guard,
) -> Result<CheckRecord, CheckError> {
    let p = diagvariety::compute_p_guarded(m, guard)?;
    let n = m.size();
    let degree = p.homogeneous_degree().ok().flatten();
    let mut detail = json!({
        "spec": "matrix",
        "terms": p.num_terms(),
        "degree": degree,
        "polynomial": p.to_string(),
    });
    mark_forced(&mut detail, guard);
    Ok(CheckRecord {
        check: CheckKind::Pofx.name(),
        n,
        p: None,
        pass: true,
        detail,
    })
}

/// The equivalence checks on an explicit unimodular matrix.
pub fn lemma4_record_for_matrix(a: &IntMatrix, guard: Guard) -> Result<CheckRecord, CheckError> {
    let (pass, mut detail) = lemma4_detail(a, guard)?;
    detail["matrix"] = Value::from("input");
    mark_forced(&mut detail, guard);
    Ok(CheckRecord {
        check: CheckKind::Lemma4.name(),
        n: a.size(),
        p: None,
        pass,
        detail,
    })
}

/// The cells a suite run evaluates, in canonical order, together with a note
/// for every size or prime left out because it exceeds a budget.
pub fn suite_cells(
    checks: &[CheckKind],
    max_n: usize,
    primes: &[u64],
    guard: Guard,
) -> (Vec<Cell>, Vec<String>) {
    let mut cells = Vec::new();
    let mut notes = Vec::new();
    for &kind in checks {
        let (lo, hi) = kind.size_range();
        let top = if guard.is_forced() { max_n } else { max_n.min(hi) };
        if top < max_n {
            notes.push(format!("{kind}: sizes above {hi} skipped (use --force)"));
        }
        for n in lo..=top {
            match kind {
                CheckKind::Lemma2 => {
                    cells.extend(TildeMode::ALL.map(|m| Cell::new(kind, n).with_mode(m)))
                }
                CheckKind::Antidiag => cells.extend(
                    [SpecLabel::KillS, SpecLabel::KillS0].map(|s| Cell::new(kind, n).with_spec(s)),
                ),
                CheckKind::Fedder => {
                    for &p in primes {
                        if guard.is_forced() || diagvariety::fedder_cell_in_budget(n, p) {
                            cells.push(Cell::new(kind, n).with_p(p));
                        } else {
                            notes.push(format!("fedder: (n={n}, p={p}) skipped (use --force)"));
                        }
                    }
                }
                _ => cells.push(Cell::new(kind, n)),
            }
        }
    }
    cells.sort();
    cells.dedup();
    (cells, notes)
}

/// A failed record for a cell whose computation returned an error.
pub fn error_record(cell: &Cell, err: &CheckError) -> CheckRecord {
    CheckRecord {
        check: cell.kind.name(),
        n: cell.n,
        p: cell.p,
        pass: false,
        detail: json!({ "error": err.to_string() }),
    }
}
