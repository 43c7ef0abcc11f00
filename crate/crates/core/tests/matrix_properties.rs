mod common;

use diagvar::polymatrix::PolyMatrix;
use diagvar::polyring::VarContext;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn subset_dp_determinant_matches_permutation_expansion(seed in any::<u64>(), n in 1usize..=4) {
        let mut r = common::rng(seed);
        let ctx = std::sync::Arc::new(VarContext::new(["a", "b"]).unwrap());
        let m = common::random_poly_matrix(&mut r, n, &ctx);
        prop_assert_eq!(m.det().unwrap(), common::perm_det(&m));
    }

    #[test]
    fn cayley_hamilton_on_integer_matrices(seed in any::<u64>(), n in 1usize..=4) {
        let mut r = common::rng(seed);
        let a = common::random_int_matrix(&mut r, n, 4);
        let ctx = std::sync::Arc::new(VarContext::new(["t"]).unwrap());
        let m = common::as_poly_matrix(&a, &std::sync::Arc::new(VarContext::new(Vec::<String>::new()).unwrap()));
        let c = m.char_poly().unwrap();
        prop_assert_eq!(c.ctx().names(), ctx.names());
        let lifted = common::as_poly_matrix(&a, c.ctx());
        prop_assert!(lifted.eval_polynomial_at(&c, 0).unwrap().is_zero());
    }

    #[test]
    fn cayley_hamilton_on_symbolic_matrices(seed in any::<u64>(), n in 1usize..=3) {
        let mut r = common::rng(seed);
        let ctx = std::sync::Arc::new(VarContext::new(["a", "b"]).unwrap());
        let m = PolyMatrix::from_fn(n, |_, _| common::random_poly(&mut r, &ctx, 2, 2, 2)).unwrap();
        let c = m.char_poly().unwrap();
        let t = c.ctx().index_of("t").unwrap();
        let lifted = m.map_entries(|e| e.embed(c.ctx())).unwrap();
        prop_assert!(lifted.eval_polynomial_at(&c, t).unwrap().is_zero());
    }

    #[test]
    fn determinant_is_multiplicative(seed in any::<u64>(), n in 1usize..=3) {
        let mut r = common::rng(seed);
        let ctx = std::sync::Arc::new(VarContext::new(["a"]).unwrap());
        let a = common::random_poly_matrix(&mut r, n, &ctx);
        let b = common::random_poly_matrix(&mut r, n, &ctx);
        prop_assert_eq!(a.mat_mul(&b).unwrap().det().unwrap(), &a.det().unwrap() * &b.det().unwrap());
    }
}

#[test]
fn characteristic_polynomial_is_monic_of_full_degree() {
    let mut r = common::rng(7);
    let ctx = std::sync::Arc::new(VarContext::new(["a"]).unwrap());
    for n in 1..=4 {
        let m = common::random_poly_matrix(&mut r, n, &ctx);
        let c = m.char_poly().unwrap();
        let t = c.ctx().index_of("t").unwrap();
        let top: Vec<_> = c.terms().iter().filter(|(mo, _)| mo.exps()[t] as usize == n).collect();
        assert_eq!(top.len(), 1);
        assert!(top[0].0.exps().iter().enumerate().all(|(i, &e)| i == t || e == 0));
        assert_eq!(top[0].1, 1.into());
        assert!(c.terms().iter().all(|(mo, _)| mo.exps()[t] as usize <= n));
    }
}
