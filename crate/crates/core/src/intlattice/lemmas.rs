use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{
    diagonals_of_powers, hermite_normal_form, int_det_guarded, spans_zn, unimodular_inverse,
    IntMatrix, LatticeError,
};
use crate::guard::Guard;
use crate::scalar::IntScalar;

pub const LEMMA4_MAX_N: usize = 10;
pub const LEMMA5_MAX_N: usize = 12;

/// `A_n`: ones on and above the main anti-diagonal (`i + j ≤ n + 1`), zeros
/// below it.
pub fn anti_triangular_ones(n: usize) -> IntMatrix<BigInt> {
    IntMatrix::from_fn(n, |i, j| if i + j < n { BigInt::one() } else { BigInt::zero() })
}

/// `1` at `(1, 1)`, `2` elsewhere on the diagonal, `−1` on both
/// off-diagonals; the square of `A_n⁻¹`.
pub fn tridiagonal_square_form(n: usize) -> IntMatrix<BigInt> {
    IntMatrix::from_fn(n, |i, j| {
        let v = match (i, j) {
            (0, 0) => 1,
            _ if i == j => 2,
            _ if i.abs_diff(j) == 1 => -1,
            _ => 0,
        };
        BigInt::from(v)
    })
}

/// Coefficients `c_0, …, c_n` of `det(t·I − A)`, lowest degree first
/// (Faddeev–LeVerrier; every division is exact).
pub fn characteristic_coefficients<T: IntScalar>(a: &IntMatrix<T>) -> Result<Vec<BigInt>, LatticeError> {
    let a = a.to_bigint();
    let n = a.size();
    let mut c = vec![BigInt::zero(); n + 1];
    c[n] = BigInt::one();
    let mut m = IntMatrix::<BigInt>::from_fn(n, |_, _| BigInt::zero());
    for k in 1..=n {
        let am = a.mat_mul(&m)?;
        m = IntMatrix::from_fn(n, |i, j| {
            let v = am.get(i, j).clone();
            if i == j {
                v + &c[n - k + 1]
            } else {
                v
            }
        });
        let trace: BigInt = a.mat_mul(&m)?.diagonal().into_iter().sum();
        let (q, r) = (-trace).div_rem(&BigInt::from(k));
        debug_assert!(r.is_zero());
        c[n - k] = q;
    }
    Ok(c)
}

/// Integers `d_0, …, d_{n−1}` with `A⁻¹ = Σ d_i·A^i`, read off the
/// characteristic polynomial and checked against the inverse.
pub fn inverse_as_power_combination<T: IntScalar>(
    a: &IntMatrix<T>,
) -> Result<Vec<BigInt>, LatticeError> {
    let a = a.to_bigint();
    let n = a.size();
    let inv = unimodular_inverse(&a)?;
    let c = characteristic_coefficients(&a)?;
    let d: Vec<BigInt> = (0..n).map(|i| -(&c[i + 1] / &c[0])).collect();
    let mut sum = IntMatrix::<BigInt>::from_fn(n, |_, _| BigInt::zero());
    let mut power = IntMatrix::identity(n);
    for di in &d {
        sum = IntMatrix::from_fn(n, |r, s| sum.get(r, s) + di * power.get(r, s));
        power = power.mat_mul(&a)?;
    }
    if sum != inv {
        return Err(LatticeError::InvalidArgument(
            "characteristic polynomial does not reproduce the inverse".into(),
        ));
    }
    Ok(d)
}

/// The three equivalent conditions on a unimodular `A`, plus the bounded
/// search for `n` spanning powers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma4Record {
    /// `|det D(A)| = 1`.
    pub a: bool,
    /// The diagonals of `A^0, …, A^(n−1)` span ℤⁿ.
    pub b: bool,
    /// Some `n` powers with exponents in `[−n, 2n]` have diagonals spanning ℤⁿ.
    pub d: bool,
    /// The exponents found for `d`.
    pub d_exponents: Option<Vec<i64>>,
}

pub fn lemma4_check<T: IntScalar>(a: &IntMatrix<T>) -> Result<Lemma4Record, LatticeError> {
    lemma4_check_guarded(a, Guard::Enforce)
}

pub fn lemma4_check_guarded<T: IntScalar>(
    a: &IntMatrix<T>,
    guard: Guard,
) -> Result<Lemma4Record, LatticeError> {
    let a = a.to_bigint();
    let n = a.size();
    guard.check("lemma4", n, 1, LEMMA4_MAX_N)?;
    let det = int_det_guarded(&a, Guard::Force)?;
    if !det.abs().is_one() {
        return Err(LatticeError::NotUnimodular { det });
    }
    let lo = -(n as i64);
    let hi = 2 * n as i64;
    let window: Vec<i64> = (lo..=hi).collect();
    let diags = diagonals_of_powers(&a, &window)?;
    let diag_of = |e: i64| &diags[(e - lo) as usize];

    let low: Vec<Vec<BigInt>> = (0..n as i64).map(|e| diag_of(e).clone()).collect();
    let d_low = int_det_guarded(&IntMatrix::from_columns(&low)?, Guard::Force)?;
    let cond_a = d_low.abs().is_one();
    let cond_b = spans_zn(&low)?;

    let d_exponents = if cond_a {
        Some((0..n as i64).collect())
    } else {
        search_spanning_subset(&window, &diags, n)?
    };
    Ok(Lemma4Record {
        a: cond_a,
        b: cond_b,
        d: d_exponents.is_some(),
        d_exponents,
    })
}

/// First `n`-subset of `window` (lexicographic) whose diagonals have
/// determinant ±1.
fn search_spanning_subset(
    window: &[i64],
    diags: &[Vec<BigInt>],
    n: usize,
) -> Result<Option<Vec<i64>>, LatticeError> {
    // A basis can only be found if the whole window already spans ℤⁿ.
    let h = hermite_normal_form(diags)?;
    if h.len() < n || !h.iter().enumerate().all(|(i, r)| r[i].is_one()) {
        return Ok(None);
    }
    let mut idx: Vec<usize> = (0..n).collect();
    loop {
        let cols: Vec<Vec<BigInt>> = idx.iter().map(|&i| diags[i].clone()).collect();
        if int_det_guarded(&IntMatrix::from_columns(&cols)?, Guard::Force)?.abs().is_one() {
            return Ok(Some(idx.iter().map(|&i| window[i]).collect()));
        }
        // Advance to the next combination.
        let mut k = n;
        loop {
            if k == 0 {
                return Ok(None);
            }
            k -= 1;
            if idx[k] < window.len() - n + k {
                break;
            }
        }
        idx[k] += 1;
        for t in k + 1..n {
            idx[t] = idx[t - 1] + 1;
        }
    }
}

/// The checks on `A_n` and `B = A_n⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma5Record {
    /// `B²` equals [`tridiagonal_square_form`].
    pub b2: bool,
    /// Every constrained entry of `B^(2j−1)`, `1 ≤ j ≤ j_max`, matches the
    /// band formula.
    pub odd: bool,
    /// The diagonals of `B, B³, …, B^(2n−1)` span ℤⁿ.
    pub span: bool,
    /// `det D(A_n)`.
    #[serde(serialize_with = "ser_bigint")]
    pub p_of_a: BigInt,
    /// `(j, k, l)`, 1-based, for every entry that breaks the band formula.
    pub odd_mismatches: Vec<(usize, usize, usize)>,
}

fn ser_bigint<S: serde::Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match i64::try_from(v) {
        Ok(x) => s.serialize_i64(x),
        Err(_) => s.serialize_str(&v.to_string()),
    }
}

impl Lemma5Record {
    pub fn passes(&self) -> bool {
        self.b2 && self.odd && self.span && self.p_of_a.abs().is_one()
    }
}

/// Value the band formula prescribes for entry `(k, l)` (1-based) of
/// `B^(2j−1)`, or `None` where it says nothing.
pub fn odd_power_band_value(n: usize, j: usize, k: usize, l: usize) -> Option<i64> {
    let s = k + l;
    let sign = |e: usize| if e.is_multiple_of(2) { 1 } else { -1 };
    if s == n + 2 - j {
        Some(sign(j + 1))
    } else if s == n + j + 1 {
        Some(sign(j))
    } else if s + j <= n + 1 || s >= n + j + 2 {
        Some(0)
    } else {
        None
    }
}

pub fn verify_lemma5_formulas(n: usize, j_max: usize) -> Result<Lemma5Record, LatticeError> {
    verify_lemma5_formulas_guarded(n, j_max, Guard::Enforce)
}

pub fn verify_lemma5_formulas_guarded(
    n: usize,
    j_max: usize,
    guard: Guard,
) -> Result<Lemma5Record, LatticeError> {
    guard.check("lemma5", n, 2, LEMMA5_MAX_N)?;
    if j_max > n - 1 {
        return Err(LatticeError::InvalidArgument(format!(
            "j_max = {j_max} exceeds n − 1 = {}",
            n - 1
        )));
    }
    let a = anti_triangular_ones(n);
    let b = unimodular_inverse(&a)?;
    let b_sq = b.mat_mul(&b)?;
    let b2 = b_sq == tridiagonal_square_form(n);

    let mut odd_mismatches = Vec::new();
    let mut odd_power = b.clone();
    for j in 1..=j_max {
        for k in 1..=n {
            for l in 1..=n {
                if let Some(want) = odd_power_band_value(n, j, k, l) {
                    if *odd_power.get(k - 1, l - 1) != BigInt::from(want) {
                        odd_mismatches.push((j, k, l));
                    }
                }
            }
        }
        odd_power = odd_power.mat_mul(&b_sq)?;
    }

    let odd_exps: Vec<i64> = (1..=n as i64).map(|j| 2 * j - 1).collect();
    let span = spans_zn(&diagonals_of_powers(&b, &odd_exps)?)?;
    let low: Vec<i64> = (0..n as i64).collect();
    let p_of_a = int_det_guarded(
        &IntMatrix::from_columns(&diagonals_of_powers(&a, &low)?)?,
        Guard::Force,
    )?;
    Ok(Lemma5Record {
        b2,
        odd: odd_mismatches.is_empty(),
        span,
        p_of_a,
        odd_mismatches,
    })
}
