//! Fedder's criterion for hypersurfaces.
//!
//! For `f` in `𝔽_p[x_1, …, x_k]`, the graded ring `𝔽_p[x]/(f)` is F-pure at
//! the homogeneous maximal ideal `m` exactly when `f^(p−1)` is not in the
//! bracket power `m^[p] = (x_1^p, …, x_k^p)`. A polynomial lies in `m^[p]` iff
//! each of its monomials has some exponent `≥ p`, so the test reduces to
//! computing `f^(p−1)` with all such monomials deleted and checking for zero.

use std::sync::Arc;

use rustc_hash::FxHashMap;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::polyring::{grevlex_cmp, Monomial, MvPolynomial, VarContext};
use crate::scalar::{CoeffRing, DomainError, PrimeField};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FedderError {
    #[error("Fedder's criterion needs a nonzero polynomial")]
    ZeroPolynomial,
    #[error("polynomial vanishes modulo {0}")]
    VanishesModP(u64),
    #[error(transparent)]
    Domain(#[from] DomainError),
}

/// Outcome of a Fedder check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FedderVerdict {
    pub fpure: bool,
    /// A monomial of the truncated power with a nonzero coefficient; every
    /// exponent is at most `p − 1`. Present iff `fpure`.
    pub witness: Option<Monomial>,
    pub p: u64,
    pub var_count: usize,
}

impl Serialize for FedderVerdict {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("FedderVerdict", 3)?;
        st.serialize_field("p", &self.p)?;
        st.serialize_field("fpure", &self.fpure)?;
        st.serialize_field("witness", &self.witness.as_ref().map(|m| m.exps()))?;
        st.end()
    }
}

/// `f` modulo `m^[p]` and modulo `p`: coefficients reduced, and every
/// monomial with an exponent `≥ p` dropped.
pub fn bracket_reduce<R: CoeffRing>(
    f: &MvPolynomial<R>,
    p: u64,
) -> Result<MvPolynomial<PrimeField>, FedderError> {
    let field = PrimeField::new(p)?;
    Ok(f.reduce_mod(field).delete_capped(cap_for(p)))
}

fn cap_for(p: u64) -> u32 {
    u32::try_from(p).expect("prime below 2^31")
}

/// `f^(p−1)` reduced modulo `m^[p]`.
pub fn truncated_frobenius_power<R: CoeffRing>(
    f: &MvPolynomial<R>,
    p: u64,
) -> Result<MvPolynomial<PrimeField>, FedderError> {
    let field = PrimeField::new(p)?;
    let g = f.reduce_mod(field);
    let k = cap_for(p - 1);
    Ok(match packed::Layout::for_poly(&g, p) {
        Some(layout) => layout.pow_capped(&g, k),
        None => g.pow_capped(k, Some(cap_for(p))),
    })
}

/// Decides F-purity of `𝔽_p[x]/(f)` at the homogeneous maximal ideal.
///
/// Integer inputs are reduced modulo `p` first. The witness is the
/// grevlex-leading monomial of the truncated power.
pub fn fedder_check<R: CoeffRing>(f: &MvPolynomial<R>, p: u64) -> Result<FedderVerdict, FedderError> {
    if f.is_zero() {
        return Err(FedderError::ZeroPolynomial);
    }
    let field = PrimeField::new(p)?;
    if f.reduce_mod(field).is_zero() {
        return Err(FedderError::VanishesModP(p));
    }
    let g = truncated_frobenius_power(f, p)?;
    let witness = g
        .terms()
        .iter()
        .map(|(m, _)| m)
        .max_by(|a, b| grevlex_cmp(a.exps(), b.exps()))
        .cloned();
    Ok(FedderVerdict {
        fpure: witness.is_some(),
        witness,
        p,
        var_count: f.ctx().len(),
    })
}

/// True when `f` is a single square-free monomial term. Such hypersurfaces
/// are F-pure in every characteristic: `f^(p−1)` is one monomial with all
/// exponents `p − 1` and coefficient `c^(p−1) = 1`.
pub fn squarefree_all_variables_shortcut<R: CoeffRing>(f: &MvPolynomial<R>) -> bool {
    matches!(f.terms(), [(m, _)] if m.is_squarefree() && !m.is_one())
}

mod packed {
    //! Exponent vectors packed into one `u64`, `width` bits per variable.
    //!
    //! Every stored exponent is `≤ p − 1`, and the width satisfies
    //! `2^(width−1) ≥ p` and `p − 2 < 2^(width−1)`, so the sum of two stored
    //! vectors never carries across fields. Adding `2^(width−1) − p` to each
    //! field then sets a field's top bit exactly when that field reached `p`.

    use super::*;

    pub(super) struct Layout {
        vars: Vec<usize>,
        width: u32,
        bias: u64,
        top_bits: u64,
        field_mask: u64,
        p: u64,
    }

    type Packed = FxHashMap<u64, u64>;

    impl Layout {
        pub(super) fn for_poly(g: &MvPolynomial<PrimeField>, p: u64) -> Option<Self> {
            let vars = g.used_vars();
            let mut width = 1;
            while (1u64 << (width - 1)) < p {
                width += 1;
            }
            if vars.len() * width as usize > 64 || vars.is_empty() {
                return None;
            }
            let mut bias = 0u64;
            let mut top_bits = 0u64;
            for k in 0..vars.len() as u32 {
                bias |= ((1u64 << (width - 1)) - p) << (k * width);
                top_bits |= (1u64 << (width - 1)) << (k * width);
            }
            Some(Layout {
                vars,
                width,
                bias,
                top_bits,
                field_mask: (1u64 << width) - 1,
                p,
            })
        }

        fn exceeds(&self, key: u64) -> bool {
            key.wrapping_add(self.bias) & self.top_bits != 0
        }

        fn pack(&self, g: &MvPolynomial<PrimeField>) -> Packed {
            let cap = self.p as u32;
            g.terms()
                .iter()
                .filter(|(m, _)| m.max_exp() < cap)
                .map(|(m, c)| {
                    let key = self
                        .vars
                        .iter()
                        .enumerate()
                        .fold(0u64, |acc, (k, &v)| {
                            acc | (m.exps()[v] as u64) << (k as u32 * self.width)
                        });
                    (key, *c)
                })
                .collect()
        }

        fn unpack(&self, ctx: &Arc<VarContext>, field: PrimeField, data: Packed) -> MvPolynomial<PrimeField> {
            let terms = data.into_iter().filter(|&(_, c)| c != 0).map(|(key, c)| {
                let mut exps = vec![0u32; ctx.len()];
                for (k, &v) in self.vars.iter().enumerate() {
                    exps[v] = ((key >> (k as u32 * self.width)) & self.field_mask) as u32;
                }
                (Monomial::new(exps), c)
            });
            MvPolynomial::from_terms(ctx.clone(), field, terms.collect::<Vec<_>>())
                .expect("exponent vectors have the context arity")
        }

        fn mul(&self, a: &Packed, b: &Packed) -> Packed {
            let p = self.p;
            let mut out = Packed::default();
            for (&ka, &ca) in a {
                for (&kb, &cb) in b {
                    let key = ka + kb;
                    if self.exceeds(key) {
                        continue;
                    }
                    let slot = out.entry(key).or_insert(0);
                    *slot = (*slot + ca * cb) % p;
                }
            }
            out.retain(|_, c| *c != 0);
            out
        }

        fn square(&self, a: &Packed) -> Packed {
            let p = self.p;
            let items: Vec<(u64, u64)> = a.iter().map(|(&k, &c)| (k, c)).collect();
            let mut out = Packed::default();
            for (i, &(ka, ca)) in items.iter().enumerate() {
                let key = ka + ka;
                if !self.exceeds(key) {
                    let slot = out.entry(key).or_insert(0);
                    *slot = (*slot + ca * ca) % p;
                }
                let twice = (2 * ca) % p;
                if twice == 0 {
                    continue;
                }
                for &(kb, cb) in &items[i + 1..] {
                    let key = ka + kb;
                    if self.exceeds(key) {
                        continue;
                    }
                    let slot = out.entry(key).or_insert(0);
                    *slot = (*slot + twice * cb) % p;
                }
            }
            out.retain(|_, c| *c != 0);
            out
        }

        pub(super) fn pow_capped(&self, g: &MvPolynomial<PrimeField>, k: u32) -> MvPolynomial<PrimeField> {
            let field = *g.ring();
            let mut base = self.pack(g);
            let mut result: Packed = [(0u64, field.one())].into_iter().collect();
            let mut k = k;
            while k > 0 {
                if k & 1 == 1 {
                    result = self.mul(&result, &base);
                }
                k >>= 1;
                if k > 0 {
                    base = self.square(&base);
                }
            }
            self.unpack(g.ctx(), field, result)
        }
    }
}
