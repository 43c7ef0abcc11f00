//! Scalar types shared by the polynomial ring and the integer lattice code.
//!
//! Everything above this module is generic over [`IntScalar`] (exact signed
//! integers) or over a [`CoeffRing`] (a coefficient ring object that knows how
//! to add and multiply its elements). Fixed-width integers are supported for
//! speed in tests, but every arithmetic step is checked: overflow panics with a
//! message instead of wrapping.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

/// An exact signed integer type.
pub trait IntScalar:
    Integer
    + Signed
    + Clone
    + Debug
    + Display
    + Hash
    + FromPrimitive
    + ToPrimitive
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + Send
    + Sync
    + 'static
{
    /// Name used in error messages.
    const NAME: &'static str;

    fn try_add(&self, other: &Self) -> Option<Self> {
        self.checked_add(other)
    }

    fn try_sub(&self, other: &Self) -> Option<Self> {
        self.checked_sub(other)
    }

    fn try_mul(&self, other: &Self) -> Option<Self> {
        self.checked_mul(other)
    }

    /// `acc += a * b`, panicking on overflow.
    fn mul_add_assign(acc: &mut Self, a: &Self, b: &Self) {
        let prod = a.try_mul(b).unwrap_or_else(|| overflow::<Self>());
        *acc = acc.try_add(&prod).unwrap_or_else(|| overflow::<Self>());
    }

    fn to_bigint(&self) -> BigInt;

    /// `None` when the value does not fit.
    fn from_bigint(v: &BigInt) -> Option<Self>;
}

#[cold]
pub(crate) fn overflow<T: IntScalar>() -> ! {
    panic!("{} arithmetic overflow", T::NAME)
}

macro_rules! prim_int_scalar {
    ($($t:ty),*) => {$(
        impl IntScalar for $t {
            const NAME: &'static str = stringify!($t);

            fn to_bigint(&self) -> BigInt {
                BigInt::from(*self)
            }

            fn from_bigint(v: &BigInt) -> Option<Self> {
                <$t>::try_from(v).ok()
            }
        }
    )*};
}

prim_int_scalar!(i32, i64, i128);

impl IntScalar for BigInt {
    const NAME: &'static str = "BigInt";

    fn try_add(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }

    fn try_sub(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }

    fn try_mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }

    fn mul_add_assign(acc: &mut Self, a: &Self, b: &Self) {
        *acc += a * b;
    }

    fn to_bigint(&self) -> BigInt {
        self.clone()
    }

    fn from_bigint(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
}

/// A commutative coefficient ring, given as a ring object carrying any
/// runtime parameters (the characteristic, for prime fields).
#[allow(clippy::wrong_self_convention)]
pub trait CoeffRing: Clone + Debug + PartialEq + Eq + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn add_assign(&self, acc: &mut Self::Elem, b: &Self::Elem) {
        *acc = self.add(acc, b);
    }

    fn mul_add_assign(&self, acc: &mut Self::Elem, a: &Self::Elem, b: &Self::Elem) {
        let prod = self.mul(a, b);
        self.add_assign(acc, &prod);
    }

    /// The image of an integer.
    fn from_bigint(&self, v: &BigInt) -> Self::Elem;

    /// Canonical integer representative: the value itself over ℤ, the
    /// residue in `[0, p)` over 𝔽_p.
    fn to_bigint(&self, a: &Self::Elem) -> BigInt;

    fn domain(&self) -> CoefficientDomain;

    fn from_i64(&self, v: i64) -> Self::Elem {
        self.from_bigint(&BigInt::from(v))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// True when the element is `-1`.
    fn is_neg_one(&self, a: &Self::Elem) -> bool {
        *a == self.neg(&self.one())
    }
}

/// The integers, represented by `T`.
#[derive(Debug, PartialEq, Eq, Default)]
pub struct Integers<T = BigInt>(std::marker::PhantomData<T>);

impl<T> Clone for Integers<T> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<T> Copy for Integers<T> {}

impl Integers<BigInt> {
    pub const fn new() -> Self {
        Integers(std::marker::PhantomData)
    }
}

impl<T> Integers<T> {
    /// The integers represented by a chosen scalar type.
    pub const fn with_scalar() -> Self {
        Integers(std::marker::PhantomData)
    }
}

impl<T: IntScalar> CoeffRing for Integers<T> {
    type Elem = T;

    fn zero(&self) -> T {
        T::zero()
    }

    fn one(&self) -> T {
        T::one()
    }

    fn is_zero(&self, a: &T) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &T, b: &T) -> T {
        a.try_add(b).unwrap_or_else(|| overflow::<T>())
    }

    fn neg(&self, a: &T) -> T {
        T::zero().try_sub(a).unwrap_or_else(|| overflow::<T>())
    }

    fn mul(&self, a: &T, b: &T) -> T {
        a.try_mul(b).unwrap_or_else(|| overflow::<T>())
    }

    fn sub(&self, a: &T, b: &T) -> T {
        a.try_sub(b).unwrap_or_else(|| overflow::<T>())
    }

    fn mul_add_assign(&self, acc: &mut T, a: &T, b: &T) {
        T::mul_add_assign(acc, a, b);
    }

    fn from_bigint(&self, v: &BigInt) -> T {
        T::from_bigint(v).unwrap_or_else(|| overflow::<T>())
    }

    fn to_bigint(&self, a: &T) -> BigInt {
        a.to_bigint()
    }

    fn domain(&self) -> CoefficientDomain {
        CoefficientDomain::Integers
    }
}

/// The prime field 𝔽_p with residues stored in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DomainError {
    #[error("modulus {0} is not a prime in [2, 2^31)")]
    NotPrime(u64),
}

impl PrimeField {
    pub const MAX_MODULUS: u64 = 1 << 31;

    pub fn new(p: u64) -> Result<Self, DomainError> {
        if p < Self::MAX_MODULUS && is_prime(p) {
            Ok(PrimeField { p })
        } else {
            Err(DomainError::NotPrime(p))
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn reduce_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
}

impl CoeffRing for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.p
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (a * b) % self.p
    }

    fn from_bigint(&self, v: &BigInt) -> u64 {
        let r = v.mod_floor(&BigInt::from(self.p));
        r.to_u64().expect("residue below modulus")
    }

    fn to_bigint(&self, a: &u64) -> BigInt {
        BigInt::from(*a)
    }

    fn domain(&self) -> CoefficientDomain {
        CoefficientDomain::ModP(self.p)
    }
}

/// Runtime tag for a coefficient ring, as it appears in file formats.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "p")]
pub enum CoefficientDomain {
    #[serde(rename = "Z")]
    Integers,
    #[serde(rename = "Fp")]
    ModP(u64),
}

impl std::fmt::Display for CoefficientDomain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CoefficientDomain::Integers => write!(f, "Z"),
            CoefficientDomain::ModP(p) => write!(f, "F_{p}"),
        }
    }
}

/// Trial division; moduli here are below 2^31.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..40).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
        assert!(is_prime(2_147_483_647));
        assert!(PrimeField::new(2_147_483_647).is_ok());
        assert!(is_prime(2_147_483_659));
        assert!(PrimeField::new(2_147_483_659).is_err());
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(1).is_err());
    }

    #[test]
    fn prime_field_residues_are_canonical() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(f.from_i64(-1), 4);
        assert_eq!(f.from_i64(12), 2);
        assert_eq!(f.neg(&0), 0);
        assert_eq!(f.add(&3, &4), 2);
        assert_eq!(f.mul(&3, &4), 2);
        assert!(f.is_neg_one(&4));
        let f2 = PrimeField::new(2).unwrap();
        assert!(f2.is_one(&f2.neg(&1)));
    }

    #[test]
    #[should_panic(expected = "i32 arithmetic overflow")]
    fn fixed_width_overflow_is_loud() {
        let z = Integers::<i32>::with_scalar();
        z.mul(&i32::MAX, &2);
    }

    #[test]
    fn domain_json_shape() {
        let s = serde_json::to_string(&CoefficientDomain::ModP(7)).unwrap();
        assert_eq!(s, r#"{"kind":"Fp","p":7}"#);
        let s = serde_json::to_string(&CoefficientDomain::Integers).unwrap();
        assert_eq!(s, r#"{"kind":"Z"}"#);
        let d: CoefficientDomain = serde_json::from_str(r#"{"kind":"Fp","p":3}"#).unwrap();
        assert_eq!(d, CoefficientDomain::ModP(3));
    }
}
