//! Square matrices over a polynomial ring.
//!
//! Determinants use Laplace expansion organised as a dynamic program over the
//! set of columns already used: after processing `r` rows, state `S` (a set of
//! `r` columns) holds the signed sum of all partial products that pick the
//! columns in `S` for the first `r` rows. This needs only ring operations, no
//! division, and visits `2^n` states.

use std::sync::Arc;

use crate::guard::{Guard, GuardError};
use crate::polyring::{MvPolynomial, PolyError, VarContext, CHARPOLY_VAR};
use crate::scalar::CoeffRing;

/// Largest size accepted by [`PolyMatrix::det`].
pub const DET_MAX_N: usize = 8;
/// Largest size accepted by [`PolyMatrix::char_poly`].
pub const CHARPOLY_MAX_N: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatrixError {
    #[error("matrix sizes differ: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("row {row} has {len} entries, expected {expected}")]
    Ragged { row: usize, len: usize, expected: usize },
    #[error("matrix must be at least 1x1")]
    Empty,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Guard(#[from] GuardError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix<R: CoeffRing> {
    n: usize,
    // row-major
    entries: Vec<MvPolynomial<R>>,
}

impl<R: CoeffRing> PolyMatrix<R> {
    pub fn from_rows(rows: Vec<Vec<MvPolynomial<R>>>) -> Result<Self, MatrixError> {
        let n = rows.len();
        if n == 0 {
            return Err(MatrixError::Empty);
        }
        let mut entries = Vec::with_capacity(n * n);
        for (row, r) in rows.into_iter().enumerate() {
            if r.len() != n {
                return Err(MatrixError::Ragged {
                    row: row + 1,
                    len: r.len(),
                    expected: n,
                });
            }
            entries.extend(r);
        }
        for e in &entries[1..] {
            entries[0].check_compatible(e)?;
        }
        Ok(PolyMatrix { n, entries })
    }

    /// Entry `(i, j)` is `f(i, j)`, 0-based. All entries must be compatible.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> MvPolynomial<R>) -> Result<Self, MatrixError> {
        let rows = (0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect();
        Self::from_rows(rows)
    }

    pub fn identity(n: usize, ctx: Arc<VarContext>, ring: R) -> Self {
        let zero = MvPolynomial::zero(ctx.clone(), ring.clone());
        let one = MvPolynomial::one(ctx, ring);
        let entries = (0..n * n)
            .map(|k| if k / n == k % n { one.clone() } else { zero.clone() })
            .collect();
        PolyMatrix { n, entries }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn ctx(&self) -> &Arc<VarContext> {
        self.entries[0].ctx()
    }

    pub fn ring(&self) -> &R {
        self.entries[0].ring()
    }

    /// Entry `(i, j)`, 0-based.
    pub fn get(&self, i: usize, j: usize) -> &MvPolynomial<R> {
        &self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[MvPolynomial<R>]> {
        self.entries.chunks(self.n)
    }

    pub fn diagonal(&self) -> Vec<MvPolynomial<R>> {
        (0..self.n).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn map_entries<S: CoeffRing, E>(
        &self,
        mut f: impl FnMut(&MvPolynomial<R>) -> Result<MvPolynomial<S>, E>,
    ) -> Result<PolyMatrix<S>, MatrixError>
    where
        MatrixError: From<E>,
    {
        let entries = self
            .entries
            .iter()
            .map(&mut f)
            .collect::<Result<Vec<_>, E>>()?;
        let rows = entries.chunks(self.n).map(|r| r.to_vec()).collect();
        PolyMatrix::from_rows(rows)
    }

    /// The leading `k × k` block.
    pub fn leading_block(&self, k: usize) -> Result<Self, MatrixError> {
        if k == 0 || k > self.n {
            return Err(MatrixError::DimensionMismatch(k, self.n));
        }
        Self::from_fn(k, |i, j| self.get(i, j).clone())
    }

    fn check_same_shape(&self, other: &Self) -> Result<(), MatrixError> {
        if self.n != other.n {
            return Err(MatrixError::DimensionMismatch(self.n, other.n));
        }
        self.entries[0].check_compatible(&other.entries[0])?;
        Ok(())
    }

    pub fn mat_mul(&self, other: &Self) -> Result<Self, MatrixError> {
        self.check_same_shape(other)?;
        let n = self.n;
        Self::from_fn(n, |i, j| row_col_product(self, other, i, j))
    }

    pub fn mat_add(&self, other: &Self) -> Result<Self, MatrixError> {
        self.check_same_shape(other)?;
        Self::from_fn(self.n, |i, j| self.get(i, j) + other.get(i, j))
    }

    pub fn scale(&self, c: &MvPolynomial<R>) -> Result<Self, MatrixError> {
        self.entries[0].check_compatible(c)?;
        Self::from_fn(self.n, |i, j| self.get(i, j) * c)
    }

    pub fn mat_pow(&self, k: u32) -> Self {
        let mut result = Self::identity(self.n, self.ctx().clone(), self.ring().clone());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mat_mul(&base).expect("same shape");
            }
            k >>= 1;
            if k > 0 {
                base = base.mat_mul(&base).expect("same shape");
            }
        }
        result
    }

    /// The diagonal of `self * other` without forming the full product.
    pub fn diagonal_of_product(&self, other: &Self) -> Result<Vec<MvPolynomial<R>>, MatrixError> {
        self.check_same_shape(other)?;
        Ok((0..self.n)
            .map(|i| row_col_product(self, other, i, i))
            .collect())
    }

    pub fn det(&self) -> Result<MvPolynomial<R>, MatrixError> {
        self.det_guarded(Guard::Enforce)
    }

    pub fn det_guarded(&self, guard: Guard) -> Result<MvPolynomial<R>, MatrixError> {
        guard.check("det", self.n, 1, DET_MAX_N)?;
        Ok(subset_dp_det(self))
    }

    /// `det(t·I − A)`, in this matrix's context extended by `t`.
    pub fn char_poly(&self) -> Result<MvPolynomial<R>, MatrixError> {
        self.char_poly_guarded(Guard::Enforce)
    }

    pub fn char_poly_guarded(&self, guard: Guard) -> Result<MvPolynomial<R>, MatrixError> {
        guard.check("char_poly", self.n, 1, CHARPOLY_MAX_N)?;
        let ctx = Arc::new(self.ctx().with_var(CHARPOLY_VAR));
        let t_idx = ctx.index_of(CHARPOLY_VAR).expect("just added");
        let t = MvPolynomial::var(ctx.clone(), self.ring().clone(), t_idx);
        let shifted = Self::from_fn(self.n, |i, j| {
            let a = self.get(i, j).embed(&ctx).expect("target extends the source");
            if i == j {
                &t - &a
            } else {
                a.neg()
            }
        })?;
        Ok(subset_dp_det(&shifted))
    }

    /// Evaluates `f`, read as a polynomial in the variable at `var`, at this
    /// matrix: each term `c·m·var^k` contributes `c·m·A^k`.
    pub fn eval_polynomial_at(&self, f: &MvPolynomial<R>, var: usize) -> Result<Self, MatrixError> {
        self.entries[0].check_compatible(f)?;
        let n = self.n;
        let mut result = Self::from_fn(n, |_, _| f.zero_like())?;
        let mut powers: Vec<Self> = vec![Self::identity(n, self.ctx().clone(), self.ring().clone())];
        for (m, c) in f.terms() {
            let k = m.exps()[var] as usize;
            while powers.len() <= k {
                let next = powers.last().unwrap().mat_mul(self)?;
                powers.push(next);
            }
            let mut rest = m.exps().to_vec();
            rest[var] = 0;
            let coeff = MvPolynomial::from_terms(
                f.ctx().clone(),
                f.ring().clone(),
                [(crate::polyring::Monomial::new(rest), c.clone())],
            )?;
            result = result.mat_add(&powers[k].scale(&coeff)?)?;
        }
        Ok(result)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(MvPolynomial::is_zero)
    }
}

fn row_col_product<R: CoeffRing>(
    a: &PolyMatrix<R>,
    b: &PolyMatrix<R>,
    i: usize,
    j: usize,
) -> MvPolynomial<R> {
    let mut acc = a.get(0, 0).zero_like();
    for k in 0..a.n {
        let (x, y) = (a.get(i, k), b.get(k, j));
        if x.is_zero() || y.is_zero() {
            continue;
        }
        acc = &acc + &(x * y);
    }
    acc
}

fn subset_dp_det<R: CoeffRing>(a: &PolyMatrix<R>) -> MvPolynomial<R> {
    let n = a.n;
    let zero = a.get(0, 0).zero_like();
    let mut layer: Vec<(usize, MvPolynomial<R>)> = vec![(0, a.get(0, 0).one_like())];
    for row in 0..n {
        let mut next: Vec<Option<MvPolynomial<R>>> = vec![None; 1 << n];
        for (mask, partial) in &layer {
            for col in 0..n {
                let bit = 1 << col;
                if mask & bit != 0 {
                    continue;
                }
                let entry = a.get(row, col);
                if entry.is_zero() {
                    continue;
                }
                // columns already used to the right of `col` are inversions
                let inversions = (mask >> (col + 1)).count_ones();
                let mut term = partial * entry;
                if inversions % 2 == 1 {
                    term = term.neg();
                }
                let slot = &mut next[mask | bit];
                *slot = Some(match slot.take() {
                    Some(acc) => &acc + &term,
                    None => term,
                });
            }
        }
        layer = next
            .into_iter()
            .enumerate()
            .filter_map(|(mask, p)| p.filter(|p| !p.is_zero()).map(|p| (mask, p)))
            .collect();
        if layer.is_empty() {
            return zero;
        }
    }
    debug_assert!(layer.len() <= 1);
    layer.pop().map(|(_, p)| p).unwrap_or(zero)
}
