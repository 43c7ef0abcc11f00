//! Exact integer matrices: determinants, unimodular inverses, powers,
//! diagonals of powers and the "spans ℤⁿ" predicate.
//!
//! [`IntMatrix`] is generic over [`IntScalar`]; fixed-width scalars report
//! [`LatticeError::Overflow`] instead of wrapping. Lattice predicates always
//! work in `BigInt` internally.

mod hnf;
mod lemmas;

use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;
use serde_json::Value;

use crate::guard::{Guard, GuardError};
use crate::scalar::IntScalar;

pub use hnf::{hermite_normal_form, spans_zn};
pub use lemmas::{
    anti_triangular_ones, characteristic_coefficients, inverse_as_power_combination,
    lemma4_check, lemma4_check_guarded, odd_power_band_value, tridiagonal_square_form,
    verify_lemma5_formulas, verify_lemma5_formulas_guarded, Lemma4Record, Lemma5Record,
    LEMMA4_MAX_N, LEMMA5_MAX_N,
};

/// Largest size accepted by [`int_det`].
pub const INT_DET_MAX_N: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error(transparent)]
    Guard(#[from] GuardError),
    #[error("matrix is not unimodular (determinant {det})")]
    NotUnimodular { det: BigInt },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("row {row} has {len} entries, expected {expected}")]
    Ragged { row: usize, len: usize, expected: usize },
    #[error("empty input")]
    Empty,
    #[error("{0} arithmetic overflow")]
    Overflow(&'static str),
    #[error("invalid matrix JSON: {0}")]
    Json(String),
    #[error("{0}")]
    InvalidArgument(String),
}

fn ovf<T: IntScalar>() -> LatticeError {
    LatticeError::Overflow(T::NAME)
}

pub(crate) fn add<T: IntScalar>(a: &T, b: &T) -> Result<T, LatticeError> {
    a.try_add(b).ok_or_else(ovf::<T>)
}

pub(crate) fn sub<T: IntScalar>(a: &T, b: &T) -> Result<T, LatticeError> {
    a.try_sub(b).ok_or_else(ovf::<T>)
}

pub(crate) fn mul<T: IntScalar>(a: &T, b: &T) -> Result<T, LatticeError> {
    a.try_mul(b).ok_or_else(ovf::<T>)
}

/// A square integer matrix, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix<T = BigInt> {
    n: usize,
    entries: Vec<T>,
}

impl<T: IntScalar> IntMatrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, LatticeError> {
        let n = rows.len();
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(LatticeError::Ragged {
                    row: i + 1,
                    len: row.len(),
                    expected: n,
                });
            }
            entries.extend(row);
        }
        Ok(IntMatrix { n, entries })
    }

    /// Panics if `n == 0`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        assert!(n > 0, "matrix size must be at least 1");
        let entries = (0..n * n).map(|k| f(k / n, k % n)).collect();
        IntMatrix { n, entries }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self, LatticeError> {
        let rows = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&v| T::from_i64(v).ok_or_else(ovf::<T>))
                    .collect::<Result<Vec<T>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_rows(rows)
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.entries.chunks(self.n)
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.n).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn diagonal(&self) -> Vec<T> {
        (0..self.n).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    pub fn is_identity(&self) -> bool {
        self.rows().enumerate().all(|(i, r)| {
            r.iter()
                .enumerate()
                .all(|(j, v)| if i == j { v.is_one() } else { v.is_zero() })
        })
    }

    /// The matrix whose columns are `cols`.
    pub fn from_columns(cols: &[Vec<T>]) -> Result<Self, LatticeError> {
        let n = cols.len();
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        if let Some((j, c)) = cols.iter().enumerate().find(|(_, c)| c.len() != n) {
            return Err(LatticeError::DimensionMismatch(format!(
                "column {} has length {}, expected {n}",
                j + 1,
                c.len()
            )));
        }
        Ok(Self::from_fn(n, |i, j| cols[j][i].clone()))
    }

    pub fn mat_mul(&self, other: &Self) -> Result<Self, LatticeError> {
        if self.n != other.n {
            return Err(LatticeError::DimensionMismatch(format!(
                "{}×{} times {}×{}",
                self.n, self.n, other.n, other.n
            )));
        }
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = T::zero();
                for k in 0..n {
                    let a = self.get(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    acc = add(&acc, &mul(a, other.get(k, j))?)?;
                }
                entries.push(acc);
            }
        }
        Ok(IntMatrix { n, entries })
    }

    pub fn to_bigint(&self) -> IntMatrix<BigInt> {
        IntMatrix {
            n: self.n,
            entries: self.entries.iter().map(IntScalar::to_bigint).collect(),
        }
    }

    pub fn try_from_bigint(m: &IntMatrix<BigInt>) -> Result<Self, LatticeError> {
        let entries = m
            .entries
            .iter()
            .map(|v| T::from_bigint(v).ok_or_else(ovf::<T>))
            .collect::<Result<_, _>>()?;
        Ok(IntMatrix { n: m.n, entries })
    }

    /// `{"n": …, "entries": [[…], …]}`; entries beyond ±2^53 are written as
    /// decimal strings.
    pub fn to_json(&self) -> Value {
        let limit = BigInt::from(1u64 << 53);
        let entry = |v: &T| {
            let b = v.to_bigint();
            match i64::try_from(&b) {
                Ok(x) if b.abs() <= limit => Value::from(x),
                _ => Value::from(b.to_string()),
            }
        };
        serde_json::json!({
            "n": self.n,
            "entries": self.rows().map(|r| r.iter().map(entry).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, LatticeError> {
        let err = |m: String| LatticeError::Json(m);
        let obj = v.as_object().ok_or_else(|| err("expected an object".into()))?;
        let rows = obj
            .get("entries")
            .and_then(Value::as_array)
            .ok_or_else(|| err("missing `entries` array".into()))?;
        let mut parsed = Vec::with_capacity(rows.len());
        for (i, row) in rows.iter().enumerate() {
            let row = row
                .as_array()
                .ok_or_else(|| err(format!("row {} is not an array", i + 1)))?;
            let mut out = Vec::with_capacity(row.len());
            for (j, e) in row.iter().enumerate() {
                let b = json_integer(e)
                    .ok_or_else(|| err(format!("entry ({}, {}) is not an integer", i + 1, j + 1)))?;
                out.push(T::from_bigint(&b).ok_or_else(ovf::<T>)?);
            }
            parsed.push(out);
        }
        let m = Self::from_rows(parsed)?;
        if let Some(n) = obj.get("n") {
            if n.as_u64() != Some(m.n as u64) {
                return Err(err(format!("`n` is {n} but there are {} rows", m.n)));
            }
        }
        Ok(m)
    }

    pub fn from_json_str(s: &str) -> Result<Self, LatticeError> {
        let v: Value = serde_json::from_str(s).map_err(|e| LatticeError::Json(e.to_string()))?;
        Self::from_json(&v)
    }
}

fn json_integer(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .or_else(|| n.as_u64().map(BigInt::from)),
        Value::String(s) => {
            let digits = s.strip_prefix('-').unwrap_or(s);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return None;
            }
            s.parse().ok()
        }
        _ => None,
    }
}

impl<T: IntScalar> fmt::Display for IntMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "[")?;
            for (j, v) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn int_det<T: IntScalar>(a: &IntMatrix<T>) -> Result<T, LatticeError> {
    int_det_guarded(a, Guard::Enforce)
}

pub fn int_det_guarded<T: IntScalar>(a: &IntMatrix<T>, guard: Guard) -> Result<T, LatticeError> {
    let n = a.n;
    guard.check("int_det", n, 1, INT_DET_MAX_N)?;
    let mut m: Vec<Vec<T>> = a.rows().map(<[T]>::to_vec).collect();
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return Ok(T::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = sub(&mul(&m[i][j], &m[k][k])?, &mul(&m[i][k], &m[k][j])?)?;
                m[i][j] = num / prev.clone();
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    Ok(if negate { T::zero().try_sub(&d).ok_or_else(ovf::<T>)? } else { d })
}

fn is_unit<T: IntScalar>(v: &T) -> bool {
    v.abs().is_one()
}

/// Exact inverse of a matrix with determinant ±1.
pub fn unimodular_inverse<T: IntScalar>(a: &IntMatrix<T>) -> Result<IntMatrix<T>, LatticeError> {
    let det = int_det_guarded(a, Guard::Force)?;
    if !is_unit(&det) {
        return Err(LatticeError::NotUnimodular { det: det.to_bigint() });
    }
    let n = a.n;
    // Fraction-free Gauss–Jordan on [A | I]; the left block ends as ±I and
    // the right block as ±A⁻¹.
    let w = 2 * n;
    let mut m: Vec<Vec<T>> = (0..n)
        .map(|i| {
            let mut r = a.row(i).to_vec();
            r.extend((0..n).map(|j| if i == j { T::one() } else { T::zero() }));
            r
        })
        .collect();
    let mut prev = T::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let r = (k + 1..n)
                .find(|&r| !m[r][k].is_zero())
                .expect("nonsingular matrix has a pivot");
            m.swap(k, r);
        }
        for i in 0..n {
            if i == k {
                continue;
            }
            for j in 0..w {
                if j == k {
                    continue;
                }
                let num = sub(&mul(&m[k][k], &m[i][j])?, &mul(&m[i][k], &m[k][j])?)?;
                m[i][j] = num / prev.clone();
            }
            m[i][k] = T::zero();
        }
        prev = m[k][k].clone();
    }
    let inv = IntMatrix::from_fn(n, |i, j| m[i][n + j].clone() / m[i][i].clone());
    if !a.mat_mul(&inv)?.is_identity() {
        return Err(LatticeError::InvalidArgument(
            "inverse failed verification".into(),
        ));
    }
    Ok(inv)
}

/// `A^k`; negative `k` requires `A` to be unimodular.
pub fn int_pow<T: IntScalar>(a: &IntMatrix<T>, k: i64) -> Result<IntMatrix<T>, LatticeError> {
    let base = if k < 0 { unimodular_inverse(a)? } else { a.clone() };
    let mut e = k.unsigned_abs();
    let mut result = IntMatrix::identity(a.n);
    let mut sq = base;
    while e > 0 {
        if e & 1 == 1 {
            result = result.mat_mul(&sq)?;
        }
        e >>= 1;
        if e > 0 {
            sq = sq.mat_mul(&sq)?;
        }
    }
    Ok(result)
}

/// The matrix whose column `j` is the diagonal of `A^exponents[j]`.
pub fn diag_of_powers_matrix<T: IntScalar>(
    a: &IntMatrix<T>,
    exponents: &[i64],
) -> Result<IntMatrix<T>, LatticeError> {
    if exponents.len() != a.n {
        return Err(LatticeError::DimensionMismatch(format!(
            "{} exponents for a {}×{} matrix",
            exponents.len(),
            a.n,
            a.n
        )));
    }
    let cols = diagonals_of_powers(a, exponents)?;
    IntMatrix::from_columns(&cols)
}

/// `diag(A^e)` for each `e`, sharing work between consecutive exponents.
pub fn diagonals_of_powers<T: IntScalar>(
    a: &IntMatrix<T>,
    exponents: &[i64],
) -> Result<Vec<Vec<T>>, LatticeError> {
    let lo = exponents.iter().copied().min().unwrap_or(0);
    let hi = exponents.iter().copied().max().unwrap_or(0);
    if hi - lo <= 4 * a.n as i64 + 4 {
        let mut cache = std::collections::BTreeMap::new();
        let mut cur = int_pow(a, lo)?;
        for e in lo..=hi {
            if exponents.contains(&e) {
                cache.insert(e, cur.diagonal());
            }
            if e < hi {
                cur = cur.mat_mul(a)?;
            }
        }
        Ok(exponents.iter().map(|e| cache[e].clone()).collect())
    } else {
        exponents.iter().map(|&e| Ok(int_pow(a, e)?.diagonal())).collect()
    }
}
