//! Independent oracles and generators shared by the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use diagvar::intlattice::IntMatrix;
use diagvar::polymatrix::PolyMatrix;
use diagvar::polyring::{Monomial, MvPolynomial, VarContext};
use diagvar::scalar::{CoeffRing, Integers};
use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// All permutations of `0..n` with their signs.
pub fn permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for k in 0..used.len() {
            if !used[k] {
                used[k] = true;
                prefix.push(k);
                go(prefix, used, out);
                prefix.pop();
                used[k] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out.into_iter()
        .map(|p| {
            let inversions = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| p[i] > p[j])
                .count();
            (p, if inversions % 2 == 0 { 1 } else { -1 })
        })
        .collect()
}

/// Leibniz expansion.
pub fn perm_det<R: CoeffRing>(m: &PolyMatrix<R>) -> MvPolynomial<R> {
    let n = m.size();
    let mut acc = MvPolynomial::zero(m.ctx().clone(), m.ring().clone());
    for (p, sign) in permutations(n) {
        let mut term = MvPolynomial::one(m.ctx().clone(), m.ring().clone());
        for (i, &j) in p.iter().enumerate() {
            term = term.try_mul(m.get(i, j)).unwrap();
        }
        acc = if sign > 0 { acc.try_add(&term) } else { acc.try_sub(&term) }.unwrap();
    }
    acc
}

pub fn perm_det_int(m: &IntMatrix) -> BigInt {
    let n = m.size();
    let mut acc = BigInt::zero();
    for (p, sign) in permutations(n) {
        let mut term = BigInt::from(sign);
        for (i, &j) in p.iter().enumerate() {
            term *= m.get(i, j);
        }
        acc += term;
    }
    acc
}

/// `f^k` by `k − 1` plain multiplications.
pub fn naive_pow<R: CoeffRing>(f: &MvPolynomial<R>, k: u32) -> MvPolynomial<R> {
    let mut acc = f.one_like();
    for _ in 0..k {
        acc = acc.try_mul(f).unwrap();
    }
    acc
}

/// A random polynomial with up to `terms` terms, exponents below `max_exp`
/// and coefficients in `[-c, c]`.
pub fn random_poly(
    r: &mut impl Rng,
    ctx: &Arc<VarContext>,
    terms: usize,
    max_exp: u32,
    c: i64,
) -> MvPolynomial<Integers> {
    let ts: Vec<(Monomial, BigInt)> = (0..r.gen_range(0..=terms))
        .map(|_| {
            let e: Vec<u32> = (0..ctx.len()).map(|_| r.gen_range(0..max_exp)).collect();
            (Monomial::new(e), BigInt::from(r.gen_range(-c..=c)))
        })
        .collect();
    MvPolynomial::from_terms(ctx.clone(), Integers::new(), ts).unwrap()
}

pub fn random_poly_matrix(r: &mut impl Rng, n: usize, ctx: &Arc<VarContext>) -> PolyMatrix<Integers> {
    PolyMatrix::from_fn(n, |_, _| random_poly(r, ctx, 3, 3, 3)).unwrap()
}

pub fn random_int_matrix(r: &mut impl Rng, n: usize, c: i64) -> IntMatrix {
    IntMatrix::from_fn(n, |_, _| BigInt::from(r.gen_range(-c..=c)))
}

/// A product of random elementary row operations and sign flips.
pub fn random_unimodular(r: &mut impl Rng, n: usize, steps: usize) -> IntMatrix {
    let mut rows: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect())
        .collect();
    for _ in 0..steps {
        if n == 1 || r.gen_bool(0.1) {
            let i = r.gen_range(0..n);
            for x in &mut rows[i] {
                *x = -&*x;
            }
            continue;
        }
        let i = r.gen_range(0..n);
        let mut j = r.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let k = BigInt::from(r.gen_range(-2i64..=2));
        let src = rows[j].clone();
        for (x, y) in rows[i].iter_mut().zip(&src) {
            *x += &k * y;
        }
    }
    IntMatrix::from_rows(rows).unwrap()
}

/// The integer matrix as constant polynomials in `ctx`.
pub fn as_poly_matrix(m: &IntMatrix, ctx: &Arc<VarContext>) -> PolyMatrix<Integers> {
    PolyMatrix::from_fn(m.size(), |i, j| {
        MvPolynomial::constant(ctx.clone(), Integers::new(), m.get(i, j).clone())
    })
    .unwrap()
}
