//! Exact computations around the matrix of diagonals `D(X)` of a generic
//! square matrix and its determinant `P(X)`.
//!
//! Polynomial code is generic over a [`scalar::CoeffRing`]; integer matrices
//! over a [`scalar::IntScalar`]. The aliases below fix the usual choices:
//! `BigInt` coefficients over ℤ and `u64` residues over 𝔽_p.

pub mod diagvariety;
pub mod fpurity;
pub mod guard;
pub mod intlattice;
pub mod polymatrix;
pub mod polyring;
pub mod report;
pub mod scalar;

pub use guard::Guard;
pub use polyring::{Monomial, MvPolynomial, VarContext};
pub use scalar::{CoefficientDomain, Integers, PrimeField};

/// Polynomials with `BigInt` coefficients.
pub type ZPoly = MvPolynomial<Integers>;
/// Polynomials over a prime field.
pub type FpPoly = MvPolynomial<PrimeField>;
/// Square matrices of integer polynomials.
pub type ZPolyMatrix = polymatrix::PolyMatrix<Integers>;
/// Arbitrary-precision integer matrices.
pub type IntMatrix = intlattice::IntMatrix<num_bigint::BigInt>;
