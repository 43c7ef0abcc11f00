mod common;

use std::sync::Arc;

use diagvar::fpurity::{bracket_reduce, fedder_check, squarefree_all_variables_shortcut, truncated_frobenius_power};
use diagvar::polyring::{Monomial, MvPolynomial, VarContext};
use diagvar::scalar::{Integers, PrimeField};
use diagvar::ZPoly;
use num_bigint::BigInt;
use proptest::prelude::*;

fn ctx3() -> Arc<VarContext> {
    Arc::new(VarContext::new(["x", "y", "z"]).unwrap())
}

/// Up to 3 variables, total degree ≤ 3.
fn small_poly() -> impl Strategy<Value = ZPoly> {
    prop::collection::vec((0u32..=3, 0u32..=3, 0u32..=3, -4i64..=4), 1..6).prop_map(|ts| {
        let ts = ts
            .into_iter()
            .filter(|(a, b, c, _)| a + b + c <= 3)
            .map(|(a, b, c, k)| (Monomial::new(vec![a, b, c]), BigInt::from(k)));
        MvPolynomial::from_terms(ctx3(), Integers::new(), ts).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn verdict_matches_full_power_oracle(f in small_poly(), p in prop::sample::select(vec![2u64, 3])) {
        let field = PrimeField::new(p).unwrap();
        let g = f.reduce_mod(field);
        prop_assume!(!g.is_zero());
        let oracle = bracket_reduce(&common::naive_pow(&g, (p - 1) as u32), p).unwrap();
        let v = fedder_check(&f, p).unwrap();
        prop_assert_eq!(v.fpure, !oracle.is_zero());
        prop_assert_eq!(v.witness.is_some(), v.fpure);
        if let Some(w) = &v.witness {
            prop_assert!(w.exps().iter().all(|&e| e < p as u32));
            prop_assert!(oracle.coefficient_of(w).unwrap() != 0);
        }
    }

    #[test]
    fn truncated_power_is_already_reduced(f in small_poly(), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let g = truncated_frobenius_power(&f, p).unwrap();
        prop_assert_eq!(bracket_reduce(&g, p).unwrap(), g.clone());
        let oracle = bracket_reduce(&common::naive_pow(&f.reduce_mod(PrimeField::new(p).unwrap()), (p - 1) as u32), p).unwrap();
        prop_assert_eq!(g, oracle);
    }

    #[test]
    fn squarefree_monomials_are_fpure(mask in 1u8..8, c in prop::sample::select(vec![1i64, -1, 2, 3, 6]), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let e: Vec<u32> = (0..3).map(|i| u32::from(mask >> i & 1)).collect();
        let f = MvPolynomial::from_terms(ctx3(), Integers::new(), [(Monomial::new(e), BigInt::from(c))]).unwrap();
        prop_assert!(squarefree_all_variables_shortcut(&f));
        prop_assume!(c % p as i64 != 0);
        prop_assert!(fedder_check(&f, p).unwrap().fpure);
    }
}

#[test]
fn many_variable_power_uses_the_same_answer_as_the_generic_path() {
    let names: Vec<String> = (0..10).map(|i| format!("v{i}")).collect();
    let ctx = Arc::new(VarContext::new(names).unwrap());
    let mut r = common::rng(3);
    for _ in 0..20 {
        let f = common::random_poly(&mut r, &ctx, 4, 2, 3);
        for p in [2u64, 3] {
            let g = f.reduce_mod(PrimeField::new(p).unwrap());
            let generic = g.pow_capped((p - 1) as u32, Some(p as u32));
            assert_eq!(truncated_frobenius_power(&f, p).unwrap(), generic);
        }
    }
}
