//! The matrix of diagonals `D(X)` and its determinant `P(X)`.
//!
//! Column `j` of `D(X)` (0-based) is the main diagonal of `X^j`; `P(X)` is
//! `det D(X)`, a homogeneous polynomial of degree `n(n−1)/2` in the entries of
//! a generic `n × n` matrix. This module builds both, the standard
//! specializations of `X` (anti-diagonal kills, the last-row/column block
//! form, the parameter-system identification), and checks the structural
//! identities they satisfy.
//!
//! Specializations are applied to the entries of `X` before `D` and the
//! determinant are formed; `compute_p(s(X)) = s(compute_p(X))` because
//! substitution is a ring homomorphism.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::fpurity::{self, FedderError, FedderVerdict};
use crate::guard::{Guard, GuardError};
use crate::polymatrix::{MatrixError, PolyMatrix};
use crate::polyring::{
    matrix_var, substitute, Monomial, MvPolynomial, PolyError, Substitution, VarContext,
};
use crate::scalar::{is_prime, CoeffRing, Integers};
use crate::ZPoly;

/// Largest size for which `D(M)` is formed.
pub const DIAG_MAX_N: usize = 7;
/// Largest size for which `P` of a fully generic matrix is attempted.
pub const GENERIC_P_MAX_N: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiagError {
    #[error(transparent)]
    Guard(#[from] GuardError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Fedder(#[from] FedderError),
    #[error("{0}")]
    InvalidSpecialization(String),
    #[error("specialized P is not ±x_1_1^e: {0}")]
    NotPurePower(String),
    #[error("prime {p} is outside the supported set {{2, 3, 5, 7}} (or ({n}, {p}) is over budget)")]
    UnsupportedPrime { n: usize, p: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
}

/// Which border of `X` the block specialization clears.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TildeMode {
    Row,
    Column,
    Both,
}

impl TildeMode {
    pub const ALL: [TildeMode; 3] = [TildeMode::Row, TildeMode::Column, TildeMode::Both];

    pub fn as_str(self) -> &'static str {
        match self {
            TildeMode::Row => "row",
            TildeMode::Column => "column",
            TildeMode::Both => "both",
        }
    }
}

impl fmt::Display for TildeMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TildeMode {
    type Err = DiagError;

    fn from_str(s: &str) -> Result<Self, DiagError> {
        match s {
            "row" => Ok(TildeMode::Row),
            "column" | "col" => Ok(TildeMode::Column),
            "both" => Ok(TildeMode::Both),
            _ => Err(DiagError::InvalidSpecialization(format!(
                "unknown mode `{s}` (expected row, column or both)"
            ))),
        }
    }
}

/// The named specializations of the generic matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpecLabel {
    /// Zero every entry on or below the main anti-diagonal (`i + j ≥ n + 1`).
    KillS,
    /// Zero every entry strictly below the main anti-diagonal (`i + j ≥ n + 2`).
    KillS0,
    /// Zero the last row and/or column, keeping `x_n_n`.
    Tilde(TildeMode),
    /// Zero on and below the anti-diagonal and send every other entry except
    /// `x_1_1` to `x_1_1`.
    Sop,
    Custom,
}

impl fmt::Display for SpecLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecLabel::KillS => f.write_str("S"),
            SpecLabel::KillS0 => f.write_str("S0"),
            SpecLabel::Tilde(m) => write!(f, "tilde-{m}"),
            SpecLabel::Sop => f.write_str("sop"),
            SpecLabel::Custom => f.write_str("custom"),
        }
    }
}

impl FromStr for SpecLabel {
    type Err = DiagError;

    fn from_str(s: &str) -> Result<Self, DiagError> {
        match s.to_ascii_lowercase().as_str() {
            "s" | "kills" | "kill-s" => Ok(SpecLabel::KillS),
            "s0" | "kills0" | "kill-s0" => Ok(SpecLabel::KillS0),
            "sop" => Ok(SpecLabel::Sop),
            other => match other.strip_prefix("tilde-") {
                Some(mode) => Ok(SpecLabel::Tilde(mode.parse()?)),
                None => Err(DiagError::InvalidSpecialization(format!(
                    "unknown specialization `{s}` (expected S, S0, sop or tilde-<mode>)"
                ))),
            },
        }
    }
}

/// A named substitution on the entries of the generic `n × n` matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Specialization<R: CoeffRing> {
    pub n: usize,
    pub label: SpecLabel,
    pub subst: Substitution<R>,
}

impl<R: CoeffRing> Specialization<R> {
    pub fn apply(&self, f: &MvPolynomial<R>) -> Result<MvPolynomial<R>, DiagError> {
        Ok(substitute(f, &self.subst)?)
    }

    pub fn apply_to_matrix(&self, m: &PolyMatrix<R>) -> Result<PolyMatrix<R>, DiagError> {
        Ok(m.map_entries(|e| substitute(e, &self.subst))?)
    }

    /// Variables sent to zero, in name order.
    pub fn zeroed(&self) -> Vec<&str> {
        self.subst.zeroed().collect()
    }
}

/// `(i, j)` with `i + j ≥ n + 1`, 1-based.
fn on_or_below_antidiagonal(n: usize, i: usize, j: usize) -> bool {
    i + j > n
}

/// `(i, j)` with `i + j ≥ n + 2`, 1-based.
fn strictly_below_antidiagonal(n: usize, i: usize, j: usize) -> bool {
    i + j > n + 1
}

fn kill_where<R: CoeffRing>(
    n: usize,
    ring: &R,
    ctx: &Arc<VarContext>,
    pred: impl Fn(usize, usize) -> bool,
) -> Substitution<R> {
    let zero = MvPolynomial::zero(ctx.clone(), ring.clone());
    let mut s = Substitution::new();
    for i in 1..=n {
        for j in 1..=n {
            if pred(i, j) {
                s.assign(matrix_var(i, j), zero.clone());
            }
        }
    }
    s
}

/// Builds one of the built-in specializations for size `n`.
pub fn build_specialization<R: CoeffRing>(
    n: usize,
    label: SpecLabel,
    ring: R,
) -> Result<Specialization<R>, DiagError> {
    if n == 0 {
        return Err(DiagError::InvalidSpecialization("size must be at least 1".into()));
    }
    let ctx = VarContext::matrix_arc(n);
    let subst = match label {
        SpecLabel::KillS => kill_where(n, &ring, &ctx, |i, j| on_or_below_antidiagonal(n, i, j)),
        SpecLabel::KillS0 => {
            kill_where(n, &ring, &ctx, |i, j| strictly_below_antidiagonal(n, i, j))
        }
        SpecLabel::Tilde(mode) => kill_where(n, &ring, &ctx, |i, j| {
            let in_row = i == n && j < n;
            let in_col = j == n && i < n;
            match mode {
                TildeMode::Row => in_row,
                TildeMode::Column => in_col,
                TildeMode::Both => in_row || in_col,
            }
        }),
        SpecLabel::Sop => {
            let mut s = kill_where(n, &ring, &ctx, |i, j| on_or_below_antidiagonal(n, i, j));
            let x11 = MvPolynomial::var(ctx.clone(), ring.clone(), 0);
            for k in 1..n {
                for l in 1..=n - k {
                    if (k, l) != (1, 1) {
                        s.assign(matrix_var(k, l), x11.clone());
                    }
                }
            }
            s
        }
        SpecLabel::Custom => {
            return Err(DiagError::InvalidSpecialization(
                "custom specializations are built from an explicit substitution".into(),
            ))
        }
    };
    Ok(Specialization { n, label, subst })
}

/// The `n × n` matrix whose `(i, j)` entry is the variable `x_i_j`.
pub fn generic_matrix<R: CoeffRing>(n: usize, ring: R) -> PolyMatrix<R> {
    let ctx = VarContext::matrix_arc(n);
    PolyMatrix::from_fn(n, |i, j| MvPolynomial::var(ctx.clone(), ring.clone(), i * n + j))
        .expect("entries share one context")
}

/// `D(M)`: column `j` holds the diagonal of `M^j`.
pub fn diag_matrix<R: CoeffRing>(m: &PolyMatrix<R>) -> Result<PolyMatrix<R>, DiagError> {
    diag_matrix_guarded(m, Guard::Enforce)
}

pub fn diag_matrix_guarded<R: CoeffRing>(
    m: &PolyMatrix<R>,
    guard: Guard,
) -> Result<PolyMatrix<R>, DiagError> {
    let n = m.size();
    guard.check("diag_matrix", n, 1, DIAG_MAX_N)?;
    let mut columns: Vec<Vec<MvPolynomial<R>>> = Vec::with_capacity(n);
    let mut power = PolyMatrix::identity(n, m.ctx().clone(), m.ring().clone());
    columns.push(power.diagonal());
    for j in 1..n {
        if j + 1 == n {
            columns.push(power.diagonal_of_product(m)?);
        } else {
            power = power.mat_mul(m)?;
            columns.push(power.diagonal());
        }
    }
    Ok(PolyMatrix::from_fn(n, |i, j| columns[j][i].clone())?)
}

/// `P(M) = det D(M)`.
pub fn compute_p<R: CoeffRing>(m: &PolyMatrix<R>) -> Result<MvPolynomial<R>, DiagError> {
    compute_p_guarded(m, Guard::Enforce)
}

pub fn compute_p_guarded<R: CoeffRing>(
    m: &PolyMatrix<R>,
    guard: Guard,
) -> Result<MvPolynomial<R>, DiagError> {
    let d = diag_matrix_guarded(m, guard)?;
    Ok(d.det_guarded(guard)?)
}

/// `P` of the generic `n × n` matrix over ℤ after applying `label`
/// (or nothing) to its entries.
pub fn specialized_p(n: usize, label: Option<SpecLabel>, guard: Guard) -> Result<ZPoly, DiagError> {
    let x = generic_matrix(n, Integers::new());
    match label {
        None => {
            guard.check("P of the generic matrix", n, 1, GENERIC_P_MAX_N)?;
            compute_p_guarded(&x, guard)
        }
        Some(label) => {
            let s = build_specialization(n, label, Integers::new())?;
            compute_p_guarded(&s.apply_to_matrix(&x)?, guard)
        }
    }
}

/// `n(n−1)/2`, the degree of `P` for size `n`.
pub fn p_degree(n: usize) -> u64 {
    (n * n.saturating_sub(1) / 2) as u64
}

/// Checks `P(X̃) = P(X₀) · c_{X₀}(x_n_n)`, where `X̃` is the generic matrix with
/// its last row and/or column cleared (keeping `x_n_n`), `X₀` the leading
/// `(n−1)`-block and `c(t) = det(t·I − X₀)`.
pub fn verify_block_charpoly_factorization(
    n: usize,
    mode: TildeMode,
    guard: Guard,
) -> Result<bool, DiagError> {
    guard.check("lemma2", n, 2, 5)?;
    let ring = Integers::new();
    let x = generic_matrix(n, ring);
    let ctx = x.ctx().clone();
    let tilde = build_specialization(n, SpecLabel::Tilde(mode), ring)?;
    let lhs = compute_p_guarded(&tilde.apply_to_matrix(&x)?, guard)?;

    let x0 = x.leading_block(n - 1)?;
    let p0 = compute_p_guarded(&x0, guard)?;
    let cp = x0.char_poly_guarded(guard)?;
    let at_xnn = Substitution::into_context(ctx.clone()).with(
        crate::polyring::CHARPOLY_VAR,
        MvPolynomial::var_named(ctx.clone(), ring, &matrix_var(n, n))?,
    );
    let rhs = &p0 * &substitute(&cp, &at_xnn)?;
    Ok(lhs == rhs)
}

/// Result of the induction-step identity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InductionOutcome {
    /// `P(X̃̃) = P(X̃₀) · σ · ∏ x_{i,n−i}` with `σ = (−1)^((n−2)(n−1)/2)`.
    pub holds: bool,
    /// The identity holds with `σ` replaced by `−σ`.
    pub holds_negated: bool,
    pub stated_sign: i32,
}

impl InductionOutcome {
    pub fn holds_up_to_sign(&self) -> bool {
        self.holds || self.holds_negated
    }

    /// The sign that makes the identity exact, if either does.
    pub fn exact_sign(&self) -> Option<i32> {
        if self.holds {
            Some(self.stated_sign)
        } else if self.holds_negated {
            Some(-self.stated_sign)
        } else {
            None
        }
    }
}

/// Checks the induction-step identity
/// `P(X̃̃) = P(X̃₀) · (−1)^((n−2)(n−1)/2) · ∏_{i=1}^{n−1} x_{i,n−i}`.
///
/// `X̃̃` is the generic matrix with its last row and column cleared
/// (including `x_n_n`) and the entries of the leading `(n−1)`-block strictly
/// below that block's anti-diagonal cleared; `X̃₀` is that leading block.
pub fn verify_induction_identity(n: usize, guard: Guard) -> Result<InductionOutcome, DiagError> {
    guard.check("induction", n, 3, 6)?;
    let ring = Integers::new();
    let x = generic_matrix(n, ring);
    let ctx = x.ctx().clone();
    let zero = MvPolynomial::zero(ctx.clone(), ring);
    let mut s = Substitution::new();
    for i in 1..=n {
        for j in 1..=n {
            let border = i == n || j == n;
            let below_block_antidiagonal = i < n && j < n && strictly_below_antidiagonal(n - 1, i, j);
            if border || below_block_antidiagonal {
                s.assign(matrix_var(i, j), zero.clone());
            }
        }
    }
    let double_tilde = Specialization {
        n,
        label: SpecLabel::Custom,
        subst: s,
    }
    .apply_to_matrix(&x)?;
    let lhs = compute_p_guarded(&double_tilde, guard)?;

    let block = double_tilde.leading_block(n - 1)?;
    let p_block = compute_p_guarded(&block, guard)?;
    let stated_sign: i32 = if ((n - 2) * (n - 1) / 2).is_multiple_of(2) { 1 } else { -1 };
    let mut anti = vec![0u32; ctx.len()];
    for i in 1..n {
        anti[ctx.require(&matrix_var(i, n - i))?] = 1;
    }
    let unsigned = p_block.mul_term(&Monomial::new(anti), &BigInt::one());
    let rhs = if stated_sign == 1 { unsigned.clone() } else { unsigned.neg() };
    Ok(InductionOutcome {
        holds: lhs == rhs,
        holds_negated: lhs == rhs.neg(),
        stated_sign,
    })
}

/// `∏_{i+j ≤ n} x_i_j`, the product of the entries strictly above the main
/// anti-diagonal, as a monomial in the `n × n` matrix context.
pub fn above_antidiagonal_monomial(n: usize) -> Monomial {
    let mut e = vec![0u32; n * n];
    for i in 1..n {
        for j in 1..=n - i {
            e[(i - 1) * n + (j - 1)] = 1;
        }
    }
    Monomial::new(e)
}

/// Exact coefficient of [`above_antidiagonal_monomial`] in `P` specialized by
/// `KillS` or `KillS0`.
pub fn antidiag_unit_coeff(n: usize, label: SpecLabel, guard: Guard) -> Result<BigInt, DiagError> {
    guard.check("antidiag", n, 2, 6)?;
    if !matches!(label, SpecLabel::KillS | SpecLabel::KillS0) {
        return Err(DiagError::InvalidSpecialization(format!(
            "anti-diagonal coefficient is defined for S and S0, not {label}"
        )));
    }
    let p = specialized_p(n, Some(label), guard)?;
    Ok(p.coefficient_of(&above_antidiagonal_monomial(n))?)
}

/// `P` under the parameter-system specialization, written `sign · x_1_1^exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SopNormalForm {
    pub sign: i32,
    pub exponent: u64,
}

pub fn sop_normal_form(n: usize, guard: Guard) -> Result<SopNormalForm, DiagError> {
    guard.check("sop", n, 2, 6)?;
    let p = specialized_p(n, Some(SpecLabel::Sop), guard)?;
    match p.terms() {
        [(m, c)] if c.abs().is_one() && m.exps()[1..].iter().all(|&e| e == 0) => {
            Ok(SopNormalForm {
                sign: if c.is_negative() { -1 } else { 1 },
                exponent: m.exps()[0] as u64,
            })
        }
        _ => Err(DiagError::NotPurePower(p.to_string())),
    }
}

/// The variables `x_i_j` with `i + j ≤ n`, which survive `KillS`.
pub fn surviving_context(n: usize) -> Arc<VarContext> {
    let names = (1..n).flat_map(|i| (1..=n - i).map(move |j| matrix_var(i, j)));
    Arc::new(VarContext::new(names).expect("distinct names"))
}

/// A Fedder verdict for `P` specialized by `KillS`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpureOutcome {
    pub verdict: FedderVerdict,
    /// The specialized polynomial was a single square-free term.
    pub squarefree_shortcut: bool,
}

/// Whether `(n, p)` is inside the default budget.
pub fn fedder_cell_in_budget(n: usize, p: u64) -> bool {
    (2..=5).contains(&n) && [2, 3, 5, 7].contains(&p) && (n, p) != (5, 7)
}

/// Specializes `P` by `KillS`, views it in the ring of surviving variables
/// over `𝔽_p` and runs Fedder's criterion.
pub fn check_fpure(n: usize, p: u64, guard: Guard) -> Result<FpureOutcome, DiagError> {
    guard.check("fedder", n, 2, 5)?;
    if !is_prime(p) {
        return Err(DiagError::NotPrime(p));
    }
    if !guard.is_forced() && !fedder_cell_in_budget(n, p) {
        return Err(DiagError::UnsupportedPrime { n, p });
    }
    let f = specialized_p(n, Some(SpecLabel::KillS), guard)?.embed(&surviving_context(n))?;
    let squarefree_shortcut = fpurity::squarefree_all_variables_shortcut(&f);
    let verdict = fpurity::fedder_check(&f, p)?;
    Ok(FpureOutcome {
        verdict,
        squarefree_shortcut,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_poly;

    fn z(s: &str, n: usize) -> ZPoly {
        parse_poly(s, &VarContext::matrix_arc(n), Integers::new()).unwrap()
    }

    fn zz() -> Integers {
        Integers::new()
    }

    #[test]
    fn generic_matrices() {
        let x1 = generic_matrix(1, zz());
        assert_eq!(*x1.get(0, 0), z("x_1_1", 1));
        let x2 = generic_matrix(2, zz());
        assert_eq!(*x2.get(1, 0), z("x_2_1", 2));
        assert_eq!(*x2.get(0, 1), z("x_1_2", 2));
    }

    #[test]
    fn kill_s_on_three_by_three() {
        let s = build_specialization(3, SpecLabel::KillS, zz()).unwrap();
        assert_eq!(s.zeroed(), ["x_1_3", "x_2_2", "x_2_3", "x_3_1", "x_3_2", "x_3_3"]);
        let x = s.apply_to_matrix(&generic_matrix(3, zz())).unwrap();
        let expect = [["x_1_1", "x_1_2", "0"], ["x_2_1", "0", "0"], ["0", "0", "0"]];
        for (i, row) in expect.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                assert_eq!(*x.get(i, j), z(e, 3));
            }
        }
    }

    #[test]
    fn kill_s0_and_sop_sets() {
        let s0 = build_specialization(2, SpecLabel::KillS0, zz()).unwrap();
        assert_eq!(s0.zeroed(), ["x_2_2"]);
        let sop = build_specialization(3, SpecLabel::Sop, zz()).unwrap();
        assert_eq!(sop.zeroed(), ["x_1_3", "x_2_2", "x_2_3", "x_3_1", "x_3_2", "x_3_3"]);
        assert_eq!(sop.subst.get("x_1_2"), Some(&z("x_1_1", 3)));
        assert_eq!(sop.subst.get("x_2_1"), Some(&z("x_1_1", 3)));
        assert_eq!(sop.subst.len(), 8);
        let row = build_specialization(3, SpecLabel::Tilde(TildeMode::Row), zz()).unwrap();
        assert_eq!(row.zeroed(), ["x_3_1", "x_3_2"]);
        let col = build_specialization(3, SpecLabel::Tilde(TildeMode::Column), zz()).unwrap();
        assert_eq!(col.zeroed(), ["x_1_3", "x_2_3"]);
        assert!(build_specialization(3, SpecLabel::Custom, zz()).is_err());
        assert!(build_specialization(0, SpecLabel::KillS, zz()).is_err());
    }

    #[test]
    fn labels_parse() {
        assert_eq!("S".parse::<SpecLabel>().unwrap(), SpecLabel::KillS);
        assert_eq!("s0".parse::<SpecLabel>().unwrap(), SpecLabel::KillS0);
        assert_eq!(
            "tilde-row".parse::<SpecLabel>().unwrap(),
            SpecLabel::Tilde(TildeMode::Row)
        );
        assert!("tilde-diag".parse::<SpecLabel>().is_err());
        assert!("T".parse::<SpecLabel>().is_err());
    }

    #[test]
    fn diag_matrix_small() {
        let d = diag_matrix(&generic_matrix(2, zz())).unwrap();
        assert_eq!(*d.get(0, 0), z("1", 2));
        assert_eq!(*d.get(0, 1), z("x_1_1", 2));
        assert_eq!(*d.get(1, 1), z("x_2_2", 2));
        let s = build_specialization(3, SpecLabel::KillS, zz()).unwrap();
        let d = diag_matrix(&s.apply_to_matrix(&generic_matrix(3, zz())).unwrap()).unwrap();
        let expect = [
            ["1", "x_1_1", "x_1_1^2 + x_1_2*x_2_1"],
            ["1", "0", "x_1_2*x_2_1"],
            ["1", "0", "0"],
        ];
        for (i, row) in expect.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                assert_eq!(*d.get(i, j), z(e, 3), "entry ({i},{j})");
            }
        }
    }

    #[test]
    fn small_pofx() {
        assert!(specialized_p(1, None, Guard::Enforce).unwrap().is_one());
        assert_eq!(specialized_p(2, None, Guard::Enforce).unwrap(), z("x_2_2 - x_1_1", 2));
        assert_eq!(
            specialized_p(3, Some(SpecLabel::KillS), Guard::Enforce).unwrap(),
            z("x_1_1*x_1_2*x_2_1", 3)
        );
        assert_eq!(
            specialized_p(3, Some(SpecLabel::KillS0), Guard::Enforce).unwrap(),
            z(
                "-x_1_1*x_1_3*x_3_1 + x_1_1*x_1_2*x_2_1 - x_1_2*x_2_1*x_2_2 + x_1_1*x_2_2^2 - x_1_1^2*x_2_2",
                3
            )
        );
        assert!(matches!(
            specialized_p(6, None, Guard::Enforce),
            Err(DiagError::Guard(_))
        ));
    }

    #[test]
    fn s0_specialized_three_by_three_formats_canonically() {
        let p = specialized_p(3, Some(SpecLabel::KillS0), Guard::Enforce).unwrap();
        let s = p.to_string();
        assert_eq!(p.num_terms(), 5);
        assert!(s.contains("x_1_1*x_2_2^2"), "{s}");
    }

    #[test]
    fn block_factorization_small() {
        for mode in TildeMode::ALL {
            assert!(verify_block_charpoly_factorization(2, mode, Guard::Enforce).unwrap());
            assert!(verify_block_charpoly_factorization(3, mode, Guard::Enforce).unwrap());
        }
        assert!(verify_block_charpoly_factorization(1, TildeMode::Both, Guard::Enforce).is_err());
        assert!(verify_block_charpoly_factorization(6, TildeMode::Both, Guard::Enforce).is_err());
    }

    #[test]
    fn induction_identity_base_case() {
        let out = verify_induction_identity(3, Guard::Enforce).unwrap();
        assert!(out.holds);
        assert_eq!(out.stated_sign, -1);
        assert!(verify_induction_identity(2, Guard::Enforce).is_err());
    }

    #[test]
    fn antidiagonal_monomial_layout() {
        assert_eq!(above_antidiagonal_monomial(3).exps(), &[1, 1, 0, 1, 0, 0, 0, 0, 0]);
        assert_eq!(above_antidiagonal_monomial(2).exps(), &[1, 0, 0, 0]);
        assert_eq!(above_antidiagonal_monomial(5).degree(), p_degree(5));
    }

    #[test]
    fn antidiagonal_coefficient_three() {
        assert_eq!(antidiag_unit_coeff(3, SpecLabel::KillS, Guard::Enforce).unwrap(), 1.into());
        assert_eq!(antidiag_unit_coeff(3, SpecLabel::KillS0, Guard::Enforce).unwrap(), 1.into());
        assert!(antidiag_unit_coeff(3, SpecLabel::Sop, Guard::Enforce).is_err());
    }

    #[test]
    fn sop_small() {
        assert_eq!(
            sop_normal_form(2, Guard::Enforce).unwrap(),
            SopNormalForm { sign: -1, exponent: 1 }
        );
        assert_eq!(
            sop_normal_form(3, Guard::Enforce).unwrap(),
            SopNormalForm { sign: 1, exponent: 3 }
        );
    }

    #[test]
    fn fpure_small_cells() {
        let out = check_fpure(3, 2, Guard::Enforce).unwrap();
        assert!(out.verdict.fpure);
        assert!(out.squarefree_shortcut);
        assert_eq!(out.verdict.witness.unwrap().exps(), &[1, 1, 1]);
        assert_eq!(out.verdict.var_count, 3);
        for p in [2, 3, 5, 7] {
            let out = check_fpure(2, p, Guard::Enforce).unwrap();
            assert!(out.verdict.fpure);
            assert_eq!(out.verdict.var_count, 1);
        }
        assert!(matches!(check_fpure(3, 4, Guard::Enforce), Err(DiagError::NotPrime(4))));
        assert!(matches!(
            check_fpure(5, 7, Guard::Enforce),
            Err(DiagError::UnsupportedPrime { .. })
        ));
        assert!(matches!(
            check_fpure(3, 11, Guard::Enforce),
            Err(DiagError::UnsupportedPrime { .. })
        ));
        assert!(check_fpure(3, 11, Guard::Force).unwrap().verdict.fpure);
    }

    #[test]
    fn surviving_variables() {
        assert_eq!(
            surviving_context(3).names(),
            ["x_1_1", "x_1_2", "x_2_1"]
        );
        assert_eq!(surviving_context(5).len(), 10);
    }
}
