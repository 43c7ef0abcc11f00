//! Sparse multivariate polynomials with exact coefficients.
//!
//! A polynomial is a sorted list of `(monomial, coefficient)` pairs over a
//! shared [`VarContext`]. Terms are kept in graded-lexicographic order, highest
//! first, and zero coefficients are never stored, so structural equality is
//! polynomial equality.

mod format;
mod json;
mod parse;
mod subst;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use rustc_hash::FxHashMap;

use crate::scalar::{CoeffRing, CoefficientDomain, PrimeField};

pub use format::format_poly;
pub use json::{AnyPoly, PolyJson, TermJson};
pub use parse::parse_poly;
pub use subst::{substitute, Substitution};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("coefficient `{text}` at position {pos} is not an integer literal")]
    CoefficientNotInteger { pos: usize, text: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate variable `{0}` in context")]
    DuplicateVariable(String),
    #[error("polynomials live in different variable contexts")]
    ContextMismatch,
    #[error("coefficient domains differ: {left} vs {right}")]
    DomainMismatch {
        left: CoefficientDomain,
        right: CoefficientDomain,
    },
    #[error("monomial has {got} exponents, context has {expected} variables")]
    ArityMismatch { expected: usize, got: usize },
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("invalid polynomial JSON: {0}")]
    Json(String),
}

/// Ordered, duplicate-free list of variable names.
#[derive(Debug, Clone)]
pub struct VarContext {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl PartialEq for VarContext {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
    }
}

impl Eq for VarContext {}

/// Name of the reserved characteristic-polynomial variable.
pub const CHARPOLY_VAR: &str = "t";

impl VarContext {
    pub fn new<I, S>(names: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(PolyError::DuplicateVariable(name.clone()));
            }
        }
        Ok(VarContext { names, index })
    }

    /// `x_1_1, x_1_2, …, x_n_n` in row-major order.
    pub fn matrix(n: usize) -> Self {
        let names = (1..=n).flat_map(|i| (1..=n).map(move |j| matrix_var(i, j)));
        VarContext::new(names).expect("matrix variable names are distinct")
    }

    /// Shared handle to [`VarContext::matrix`].
    pub fn matrix_arc(n: usize) -> Arc<Self> {
        Arc::new(Self::matrix(n))
    }

    /// This context with `name` appended, or a clone if it is already present.
    pub fn with_var(&self, name: &str) -> Self {
        if self.index.contains_key(name) {
            return self.clone();
        }
        let mut names = self.names.clone();
        names.push(name.to_string());
        VarContext::new(names).expect("appended name is fresh")
    }

    /// This context with `name` removed, if present.
    pub fn without_var(&self, name: &str) -> Self {
        VarContext::new(self.names.iter().filter(|n| n.as_str() != name).cloned())
            .expect("subset of distinct names")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn require(&self, name: &str) -> Result<usize, PolyError> {
        self.index_of(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
    }
}

/// The identifier of matrix entry `(i, j)`, 1-based.
pub fn matrix_var(i: usize, j: usize) -> String {
    format!("x_{i}_{j}")
}

/// Exponent vector, one entry per context variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Box<[u32]>);

impl Monomial {
    pub fn new(exps: impl Into<Box<[u32]>>) -> Self {
        Monomial(exps.into())
    }

    pub fn one(arity: usize) -> Self {
        Monomial(vec![0; arity].into_boxed_slice())
    }

    pub fn var(arity: usize, i: usize) -> Self {
        let mut e = vec![0; arity];
        e[i] = 1;
        Monomial(e.into_boxed_slice())
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn max_exp(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&e| e <= 1)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let e: Vec<u32> = self
            .0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
            .collect();
        Monomial(e.into_boxed_slice())
    }

    pub fn pow(&self, k: u32) -> Monomial {
        let e: Vec<u32> = self
            .0
            .iter()
            .map(|a| a.checked_mul(k).expect("exponent overflow"))
            .collect();
        Monomial(e.into_boxed_slice())
    }
}

impl std::borrow::Borrow<[u32]> for Monomial {
    fn borrow(&self) -> &[u32] {
        &self.0
    }
}

/// Graded lexicographic comparison: total degree first, then the exponent
/// tuples lexicographically in context order.
pub fn grlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

/// Graded reverse lexicographic comparison: total degree first, then the
/// monomial with the smaller exponent in the last differing variable wins.
pub fn grevlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().rev().zip(b.iter().rev()) {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

/// A polynomial over the coefficient ring `R`.
#[derive(Clone)]
pub struct MvPolynomial<R: CoeffRing> {
    ctx: Arc<VarContext>,
    ring: R,
    // sorted by grlex, descending; no zero coefficients
    terms: Vec<(Monomial, R::Elem)>,
}

impl<R: CoeffRing> PartialEq for MvPolynomial<R> {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && same_ctx(&self.ctx, &other.ctx) && self.terms == other.terms
    }
}

impl<R: CoeffRing> Eq for MvPolynomial<R> {}

fn same_ctx(a: &Arc<VarContext>, b: &Arc<VarContext>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Which ring operation [`ring_arith`] applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Neg,
}

/// Checked binary/unary arithmetic; `g` is ignored for [`ArithOp::Neg`].
pub fn ring_arith<R: CoeffRing>(
    f: &MvPolynomial<R>,
    g: &MvPolynomial<R>,
    op: ArithOp,
) -> Result<MvPolynomial<R>, PolyError> {
    match op {
        ArithOp::Add => f.try_add(g),
        ArithOp::Sub => f.try_sub(g),
        ArithOp::Mul => f.try_mul(g),
        ArithOp::Neg => Ok(f.neg()),
    }
}

impl<R: CoeffRing> MvPolynomial<R> {
    pub fn zero(ctx: Arc<VarContext>, ring: R) -> Self {
        MvPolynomial {
            ctx,
            ring,
            terms: Vec::new(),
        }
    }

    pub fn constant(ctx: Arc<VarContext>, ring: R, c: R::Elem) -> Self {
        let arity = ctx.len();
        Self::from_sorted_unchecked(ctx, ring, vec![(Monomial::one(arity), c)])
    }

    pub fn one(ctx: Arc<VarContext>, ring: R) -> Self {
        let c = ring.one();
        Self::constant(ctx, ring, c)
    }

    pub fn from_int(ctx: Arc<VarContext>, ring: R, v: i64) -> Self {
        let c = ring.from_i64(v);
        Self::constant(ctx, ring, c)
    }

    /// The variable at index `i`.
    pub fn var(ctx: Arc<VarContext>, ring: R, i: usize) -> Self {
        let m = Monomial::var(ctx.len(), i);
        let c = ring.one();
        Self::from_sorted_unchecked(ctx, ring, vec![(m, c)])
    }

    pub fn var_named(ctx: Arc<VarContext>, ring: R, name: &str) -> Result<Self, PolyError> {
        let i = ctx.require(name)?;
        Ok(Self::var(ctx, ring, i))
    }

    /// Builds a normalized polynomial from arbitrary terms: like terms are
    /// combined and zeros dropped.
    pub fn from_terms<I>(ctx: Arc<VarContext>, ring: R, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Monomial, R::Elem)>,
    {
        let arity = ctx.len();
        let mut acc: FxHashMap<Monomial, R::Elem> = FxHashMap::default();
        for (m, c) in terms {
            if m.arity() != arity {
                return Err(PolyError::ArityMismatch {
                    expected: arity,
                    got: m.arity(),
                });
            }
            match acc.get_mut(&m) {
                Some(slot) => ring.add_assign(slot, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Ok(Self::from_map(ctx, ring, acc))
    }

    fn from_map(ctx: Arc<VarContext>, ring: R, map: FxHashMap<Monomial, R::Elem>) -> Self {
        let mut terms: Vec<(Monomial, R::Elem)> =
            map.into_iter().filter(|(_, c)| !ring.is_zero(c)).collect();
        terms.sort_unstable_by(|a, b| grlex_cmp(b.0.exps(), a.0.exps()));
        MvPolynomial { ctx, ring, terms }
    }

    fn from_sorted_unchecked(
        ctx: Arc<VarContext>,
        ring: R,
        mut terms: Vec<(Monomial, R::Elem)>,
    ) -> Self {
        terms.retain(|(_, c)| !ring.is_zero(c));
        MvPolynomial { ctx, ring, terms }
    }

    pub fn ctx(&self) -> &Arc<VarContext> {
        &self.ctx
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn domain(&self) -> CoefficientDomain {
        self.ring.domain()
    }

    /// Terms in canonical (descending graded-lex) order.
    pub fn terms(&self) -> &[(Monomial, R::Elem)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.ring.is_one(&self.terms[0].1)
    }

    /// The constant value, if this polynomial has no variables.
    pub fn as_constant(&self) -> Option<R::Elem> {
        match self.terms.as_slice() {
            [] => Some(self.ring.zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn zero_like(&self) -> Self {
        Self::zero(self.ctx.clone(), self.ring.clone())
    }

    pub fn one_like(&self) -> Self {
        Self::one(self.ctx.clone(), self.ring.clone())
    }

    pub fn constant_like(&self, c: R::Elem) -> Self {
        Self::constant(self.ctx.clone(), self.ring.clone(), c)
    }

    pub fn check_compatible(&self, other: &Self) -> Result<(), PolyError> {
        if self.ring != other.ring {
            return Err(PolyError::DomainMismatch {
                left: self.domain(),
                right: other.domain(),
            });
        }
        if !same_ctx(&self.ctx, &other.ctx) {
            return Err(PolyError::ContextMismatch);
        }
        Ok(())
    }

    /// Exact stored coefficient of `m`, zero when absent.
    pub fn coefficient_of(&self, m: &Monomial) -> Result<R::Elem, PolyError> {
        if m.arity() != self.ctx.len() {
            return Err(PolyError::ArityMismatch {
                expected: self.ctx.len(),
                got: m.arity(),
            });
        }
        Ok(self
            .terms
            .binary_search_by(|(t, _)| grlex_cmp(m.exps(), t.exps()))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| self.ring.zero()))
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    /// The common total degree of all terms, `None` when they differ.
    pub fn homogeneous_degree(&self) -> Result<Option<u64>, PolyError> {
        let (first, rest) = self.terms.split_first().ok_or(PolyError::ZeroPolynomial)?;
        let d = first.0.degree();
        Ok(rest.iter().all(|(m, _)| m.degree() == d).then_some(d))
    }

    /// Indices of variables that occur with a positive exponent.
    pub fn used_vars(&self) -> Vec<usize> {
        let mut used = vec![false; self.ctx.len()];
        for (m, _) in &self.terms {
            for (u, &e) in used.iter_mut().zip(m.exps()) {
                *u |= e > 0;
            }
        }
        used.iter()
            .enumerate()
            .filter_map(|(i, &u)| u.then_some(i))
            .collect()
    }

    pub fn neg(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), self.ring.neg(c)))
            .collect();
        Self::from_sorted_unchecked(self.ctx.clone(), self.ring.clone(), terms)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_compatible(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_compatible(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_compatible(other)?;
        Ok(self.mul_capped(other, None))
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let ring = &self.ring;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().peekable();
        let rhs = |c: &R::Elem| if negate { ring.neg(c) } else { c.clone() };
        loop {
            match (a.peek(), b.peek()) {
                (Some((ma, ca)), Some((mb, cb))) => match grlex_cmp(ma.exps(), mb.exps()) {
                    Ordering::Greater => {
                        out.push((ma.clone(), ca.clone()));
                        a.next();
                    }
                    Ordering::Less => {
                        out.push((mb.clone(), rhs(cb)));
                        b.next();
                    }
                    Ordering::Equal => {
                        let s = if negate { ring.sub(ca, cb) } else { ring.add(ca, cb) };
                        if !ring.is_zero(&s) {
                            out.push((ma.clone(), s));
                        }
                        a.next();
                        b.next();
                    }
                },
                (Some(_), None) => {
                    out.extend(a.map(|(m, c)| (m.clone(), c.clone())));
                    break;
                }
                (None, Some(_)) => {
                    out.extend(b.map(|(m, c)| (m.clone(), rhs(c))));
                    break;
                }
                (None, None) => break,
            }
        }
        MvPolynomial {
            ctx: self.ctx.clone(),
            ring: self.ring.clone(),
            terms: out,
        }
    }

    /// Product, dropping every monomial with an exponent `>= cap`.
    pub(crate) fn mul_capped(&self, other: &Self, cap: Option<u32>) -> Self {
        let ring = &self.ring;
        if self.is_zero() || other.is_zero() {
            return self.zero_like();
        }
        let arity = self.ctx.len();
        let mut acc: FxHashMap<Monomial, R::Elem> = FxHashMap::default();
        acc.reserve(self.terms.len().max(other.terms.len()));
        let mut buf = vec![0u32; arity];
        for (ma, ca) in &self.terms {
            'inner: for (mb, cb) in &other.terms {
                for ((slot, &x), &y) in buf.iter_mut().zip(ma.exps()).zip(mb.exps()) {
                    let e = x.checked_add(y).expect("exponent overflow");
                    if cap.is_some_and(|c| e >= c) {
                        continue 'inner;
                    }
                    *slot = e;
                }
                match acc.get_mut(&buf[..]) {
                    Some(slot) => ring.mul_add_assign(slot, ca, cb),
                    None => {
                        acc.insert(Monomial::new(buf.clone()), ring.mul(ca, cb));
                    }
                }
            }
        }
        Self::from_map(self.ctx.clone(), ring.clone(), acc)
    }

    /// Multiplies by a scalar.
    pub fn scale(&self, c: &R::Elem) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, a)| (m.clone(), self.ring.mul(a, c)))
            .collect();
        Self::from_sorted_unchecked(self.ctx.clone(), self.ring.clone(), terms)
    }

    /// Multiplies by a monomial and a scalar.
    pub fn mul_term(&self, m: &Monomial, c: &R::Elem) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(t, a)| (t.mul(m), self.ring.mul(a, c)))
            .collect();
        // multiplying by a monomial preserves grlex order
        Self::from_sorted_unchecked(self.ctx.clone(), self.ring.clone(), terms)
    }

    /// `self` with every monomial having some exponent `>= cap` removed.
    pub fn delete_capped(&self, cap: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.max_exp() < cap)
            .cloned()
            .collect();
        MvPolynomial {
            ctx: self.ctx.clone(),
            ring: self.ring.clone(),
            terms,
        }
    }

    /// `self^k`, truncated at `cap` when given.
    ///
    /// Truncation happens eagerly on every intermediate product. This is
    /// exact: exponents never decrease under multiplication, so every multiple
    /// of a deleted monomial would itself be deleted at the end.
    pub fn pow_capped(&self, k: u32, cap: Option<u32>) -> Self {
        let mut base = match cap {
            Some(c) => self.delete_capped(c),
            None => self.clone(),
        };
        let mut result = self.one_like();
        if let Some(c) = cap {
            result = result.delete_capped(c);
        }
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul_capped(&base, cap);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_capped(&base, cap);
            }
        }
        result
    }

    pub fn pow(&self, k: u32) -> Self {
        self.pow_capped(k, None)
    }

    /// Re-expresses the polynomial in another context, matching variables by
    /// name. Fails if a variable that actually occurs is missing from `target`.
    pub fn embed(&self, target: &Arc<VarContext>) -> Result<Self, PolyError> {
        if same_ctx(&self.ctx, target) {
            return Ok(MvPolynomial {
                ctx: target.clone(),
                ring: self.ring.clone(),
                terms: self.terms.clone(),
            });
        }
        let map: Vec<Option<usize>> = self
            .ctx
            .names()
            .iter()
            .map(|n| target.index_of(n))
            .collect();
        let used = self.used_vars();
        for &u in &used {
            if map[u].is_none() {
                return Err(PolyError::UnknownVariable(self.ctx.name(u).to_string()));
            }
        }
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0u32; target.len()];
            for &u in &used {
                e[map[u].unwrap()] = m.exps()[u];
            }
            (Monomial::new(e), c.clone())
        });
        Self::from_terms(target.clone(), self.ring.clone(), terms)
    }

    /// The same polynomial in a context holding only the variables that
    /// occur, in their original relative order.
    pub fn restrict_to_used(&self) -> Self {
        let used = self.used_vars();
        let ctx = Arc::new(
            VarContext::new(used.iter().map(|&u| self.ctx.name(u).to_string()))
                .expect("subset of distinct names"),
        );
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let e: Vec<u32> = used.iter().map(|&u| m.exps()[u]).collect();
                (Monomial::new(e), c.clone())
            })
            .collect();
        // dropping always-zero coordinates preserves grlex order
        MvPolynomial {
            ctx,
            ring: self.ring.clone(),
            terms,
        }
    }

    /// Coefficient-wise ring change.
    pub fn map_coefficients<S: CoeffRing>(
        &self,
        ring: S,
        f: impl Fn(&R::Elem) -> S::Elem,
    ) -> MvPolynomial<S> {
        let terms: Vec<(Monomial, S::Elem)> =
            self.terms.iter().map(|(m, c)| (m.clone(), f(c))).collect();
        MvPolynomial::from_sorted_unchecked(self.ctx.clone(), ring, terms)
    }

    /// Reduction of the coefficients modulo `p`.
    pub fn reduce_mod(&self, field: PrimeField) -> MvPolynomial<PrimeField> {
        let ring = self.ring.clone();
        self.map_coefficients(field, |c| field.from_bigint(&ring.to_bigint(c)))
    }

    /// Canonical integer representatives of the coefficients.
    pub fn coefficients_bigint(&self) -> impl Iterator<Item = (&Monomial, BigInt)> + '_ {
        self.terms.iter().map(|(m, c)| (m, self.ring.to_bigint(c)))
    }
}

impl<R: CoeffRing> fmt::Debug for MvPolynomial<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MvPolynomial[{}]({})", self.domain(), self)
    }
}

macro_rules! panicking_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<R: CoeffRing> std::ops::$tr<&MvPolynomial<R>> for &MvPolynomial<R> {
            type Output = MvPolynomial<R>;

            /// Panics when the operands live in different contexts or rings.
            fn $method(self, rhs: &MvPolynomial<R>) -> MvPolynomial<R> {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

panicking_binop!(Add, add, try_add);
panicking_binop!(Sub, sub, try_sub);
panicking_binop!(Mul, mul, try_mul);

impl<R: CoeffRing> std::ops::Neg for &MvPolynomial<R> {
    type Output = MvPolynomial<R>;

    fn neg(self) -> MvPolynomial<R> {
        MvPolynomial::neg(self)
    }
}
