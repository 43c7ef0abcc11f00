mod common;

use diagvar::diagvariety::{
    build_specialization, compute_p, diag_matrix, generic_matrix, p_degree, specialized_p,
    SpecLabel, TildeMode,
};
use diagvar::polymatrix::PolyMatrix;
use diagvar::polyring::{parse_poly, substitute, Substitution, VarContext};
use diagvar::scalar::Integers;
use diagvar::Guard;
use rand::Rng;

fn labels() -> Vec<SpecLabel> {
    let mut v = vec![SpecLabel::KillS, SpecLabel::KillS0, SpecLabel::Sop];
    v.extend(TildeMode::ALL.map(SpecLabel::Tilde));
    v
}

/// `D` built column by column from full powers, with no shortcut for the
/// last column.
fn diag_matrix_oracle(x: &PolyMatrix<Integers>) -> PolyMatrix<Integers> {
    let n = x.size();
    let cols: Vec<_> = (0..n).map(|j| x.mat_pow(j as u32).diagonal()).collect();
    PolyMatrix::from_fn(n, |i, j| cols[j][i].clone()).unwrap()
}

#[test]
fn p_matches_a_leibniz_expansion_of_the_oracle_d() {
    for n in 1..=4 {
        let x = generic_matrix(n, Integers::new());
        let d = diag_matrix_oracle(&x);
        assert_eq!(diag_matrix(&x).unwrap(), d);
        assert_eq!(compute_p(&x).unwrap(), common::perm_det(&d), "n = {n}");
    }
}

#[test]
fn p_is_homogeneous_of_the_expected_degree() {
    for n in 1..=5 {
        let p = specialized_p(n, None, Guard::Enforce).unwrap();
        assert_eq!(p.homogeneous_degree().unwrap(), Some(p_degree(n)), "n = {n}");
    }
}

#[test]
fn specializing_commutes_with_computing_p() {
    for n in 2..=4 {
        let x = generic_matrix(n, Integers::new());
        let p = compute_p(&x).unwrap();
        for label in labels() {
            let s = build_specialization(n, label, Integers::new()).unwrap();
            let after = compute_p(&s.apply_to_matrix(&x).unwrap()).unwrap();
            assert_eq!(s.apply(&p).unwrap(), after, "n = {n}, {label}");
        }
    }
}

#[test]
fn random_linear_substitutions_commute_with_p() {
    let mut r = common::rng(11);
    for n in 2..=3 {
        let ctx = VarContext::matrix_arc(n);
        let x = generic_matrix(n, Integers::new());
        let p = compute_p(&x).unwrap();
        for _ in 0..10 {
            let mut s = Substitution::new();
            for name in ctx.names() {
                if r.gen_bool(0.5) {
                    let other = &ctx.names()[r.gen_range(0..ctx.len())];
                    let c: i64 = r.gen_range(-2..=2);
                    let image = parse_poly(&format!("{c}*{other} + {name}"), &ctx, Integers::new())
                        .unwrap();
                    s.assign(name.clone(), image);
                }
            }
            let sx = x.map_entries(|e| substitute(e, &s)).unwrap();
            assert_eq!(substitute(&p, &s).unwrap(), compute_p(&sx).unwrap());
        }
    }
}

#[test]
fn p_is_invariant_under_transposition() {
    for n in 2..=4 {
        let x = generic_matrix(n, Integers::new());
        let xt = PolyMatrix::from_fn(n, |i, j| x.get(j, i).clone()).unwrap();
        let p = compute_p(&x).unwrap();
        assert_eq!(compute_p(&xt).unwrap(), p);
    }
}
