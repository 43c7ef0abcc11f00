//! Exit-gate criteria. Prints one PASS/FAIL line per criterion, including its
//! runtime against the allowed budget, and exits nonzero if any fail.

mod common;

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use diagvar::diagvariety::{
    antidiag_unit_coeff, build_specialization, check_fpure, compute_p, fedder_cell_in_budget,
    generic_matrix, p_degree, sop_normal_form, specialized_p, verify_block_charpoly_factorization,
    verify_induction_identity, SopNormalForm, SpecLabel, TildeMode,
};
use diagvar::intlattice::{anti_triangular_ones, int_det, lemma4_check, spans_zn, verify_lemma5_formulas};
use diagvar::polyring::{parse_poly, VarContext};
use diagvar::scalar::{Integers, PrimeField};
use diagvar::{Guard, ZPoly};
use num_bigint::BigInt;
use num_traits::{One, Signed};

type Outcome = Result<(), String>;

fn z(s: &str, n: usize) -> ZPoly {
    parse_poly(s, &VarContext::matrix_arc(n), Integers::new()).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn paper_values() -> Outcome {
    let g = Guard::Enforce;
    ensure(specialized_p(1, None, g).unwrap().is_one(), || "P for n=1 is not 1".into())?;
    let p2 = specialized_p(2, None, g).unwrap();
    ensure(p2 == z("x_2_2 - x_1_1", 2), || format!("P for n=2 is {p2}"))?;
    let s3 = specialized_p(3, Some(SpecLabel::KillS), g).unwrap();
    ensure(s3 == z("x_1_1*x_1_2*x_2_1", 3), || format!("S-specialized n=3 is {s3}"))?;
    let s03 = specialized_p(3, Some(SpecLabel::KillS0), g).unwrap();
    let five = z(
        "-x_1_1*x_1_3*x_3_1 + x_1_1*x_1_2*x_2_1 - x_1_2*x_2_1*x_2_2 + x_1_1*x_2_2^2 - x_1_1^2*x_2_2",
        3,
    );
    ensure(s03 == five, || format!("S0-specialized n=3 is {s03}"))?;
    for (n, sign, exponent) in [(2, -1, 1), (3, 1, 3), (4, -1, 6)] {
        let got = sop_normal_form(n, g).map_err(|e| e.to_string())?;
        ensure(got == SopNormalForm { sign, exponent }, || {
            format!("sop n={n}: got ({}, {})", got.sign, got.exponent)
        })?;
    }
    Ok(())
}

fn block_factorization() -> Outcome {
    for n in 2..=5 {
        for mode in TildeMode::ALL {
            let ok = verify_block_charpoly_factorization(n, mode, Guard::Enforce)
                .map_err(|e| e.to_string())?;
            ensure(ok, || format!("n={n}, mode={mode} does not factor"))?;
        }
    }
    Ok(())
}

fn induction_identity() -> Outcome {
    let mut failures = Vec::new();
    for n in 3..=5 {
        let out = verify_induction_identity(n, Guard::Enforce).map_err(|e| e.to_string())?;
        if !out.holds {
            let why = match out.exact_sign() {
                Some(s) => format!("n={n}: holds only with sign {s:+}, stated {:+}", out.stated_sign),
                None => format!("n={n}: does not hold up to sign"),
            };
            failures.push(why);
        }
    }
    ensure(failures.is_empty(), || failures.join("; "))
}

fn antidiagonal_unit() -> Outcome {
    for n in 2..=6 {
        for spec in [SpecLabel::KillS, SpecLabel::KillS0] {
            let c = antidiag_unit_coeff(n, spec, Guard::Enforce).map_err(|e| e.to_string())?;
            ensure(c.abs().is_one(), || format!("n={n}, {spec}: coefficient {c}"))?;
        }
    }
    Ok(())
}

fn fedder_cells() -> Outcome {
    let mut count = 0;
    for n in 2..=5 {
        for p in [2u64, 3, 5, 7] {
            if !fedder_cell_in_budget(n, p) {
                continue;
            }
            count += 1;
            let out = check_fpure(n, p, Guard::Enforce).map_err(|e| e.to_string())?;
            ensure(out.verdict.fpure, || format!("(n={n}, p={p}) is not F-pure"))?;
        }
    }
    ensure(count == 15, || format!("{count} cells instead of 15"))
}

fn lemma5() -> Outcome {
    for n in 2..=12 {
        let r = verify_lemma5_formulas(n, n - 1).map_err(|e| e.to_string())?;
        ensure(r.passes(), || format!("n={n}: {r:?}"))?;
    }
    Ok(())
}

fn lemma4() -> Outcome {
    let mut r = common::rng(0x4c34);
    let check = |a: &diagvar::IntMatrix, what: &str| -> Outcome {
        let rec = lemma4_check(a).map_err(|e| format!("{what}: {e}"))?;
        ensure(rec.a == rec.b, || format!("{what}: a={} b={}", rec.a, rec.b))?;
        ensure(!rec.a || rec.d, || format!("{what}: a holds but d does not"))
    };
    for k in 0..200 {
        let n = 1 + k % 6;
        let a = common::random_unimodular(&mut r, n, 3 * n);
        check(&a, &format!("random #{k} (n={n})"))?;
    }
    for n in 1..=8 {
        check(&anti_triangular_ones(n), &format!("A_{n}"))?;
    }
    Ok(())
}

fn oracles() -> Outcome {
    let mut r = common::rng(0x0ac1e);
    let ctx = Arc::new(VarContext::new(["a", "b"]).unwrap());
    for k in 0..100 {
        let n = 1 + k % 4;
        let m = common::random_poly_matrix(&mut r, n, &ctx);
        ensure(m.det().unwrap() == common::perm_det(&m), || format!("det case {k}"))?;
    }
    let ctx3 = Arc::new(VarContext::new(["x", "y", "z"]).unwrap());
    for k in 0..100 {
        let p = [2u64, 3, 5, 7][k % 4];
        let f = common::random_poly(&mut r, &ctx3, 4, 3, 5).reduce_mod(PrimeField::new(p).unwrap());
        let e = (p - 1) as u32;
        let capped = f.pow_capped(e, Some(p as u32));
        let uncapped = common::naive_pow(&f, e).delete_capped(p as u32);
        ensure(capped == uncapped, || format!("capped power case {k}"))?;
    }
    for k in 0..100 {
        let n = 1 + k % 5;
        let a = if k % 2 == 0 {
            common::random_unimodular(&mut r, n, 2 * n)
        } else {
            common::random_int_matrix(&mut r, n, 2)
        };
        let cols: Vec<Vec<BigInt>> = (0..n).map(|j| a.column(j)).collect();
        let unit = common::perm_det_int(&a).abs().is_one();
        ensure(spans_zn(&cols).unwrap() == unit, || format!("span case {k}"))?;
        ensure(int_det(&a).unwrap() == common::perm_det_int(&a), || format!("det case {k}"))?;
    }
    Ok(())
}

fn structure() -> Outcome {
    for n in 1..=5 {
        let p = specialized_p(n, None, Guard::Enforce).unwrap();
        let d = p.homogeneous_degree().map_err(|e| e.to_string())?;
        ensure(d == Some(p_degree(n)), || format!("n={n}: degree {d:?}"))?;
    }
    for n in 2..=4 {
        let x = generic_matrix(n, Integers::new());
        let p = compute_p(&x).unwrap();
        for label in [SpecLabel::KillS, SpecLabel::KillS0, SpecLabel::Sop, SpecLabel::Tilde(TildeMode::Both)] {
            let s = build_specialization(n, label, Integers::new()).unwrap();
            let after = compute_p(&s.apply_to_matrix(&x).unwrap()).unwrap();
            ensure(s.apply(&p).unwrap() == after, || format!("n={n}, {label} does not commute"))?;
        }
    }
    let mut r = common::rng(0xc4);
    let empty = Arc::new(VarContext::new(Vec::<String>::new()).unwrap());
    for k in 0..50 {
        let n = 1 + k % 4;
        let a = common::random_int_matrix(&mut r, n, 5);
        let c = common::as_poly_matrix(&a, &empty).char_poly().unwrap();
        let lifted = common::as_poly_matrix(&a, c.ctx());
        ensure(lifted.eval_polynomial_at(&c, 0).unwrap().is_zero(), || {
            format!("Cayley–Hamilton case {k}")
        })?;
    }
    Ok(())
}

type Criterion = (u32, &'static str, u64, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (1, "paper-value regressions", 1, paper_values),
        (2, "block characteristic-polynomial factorization, n=2..5, all modes", 30, block_factorization),
        (3, "induction-step identity, n=3..5", 30, induction_identity),
        (4, "unit anti-diagonal coefficient, n=2..6, S and S0", 60, antidiagonal_unit),
        (5, "Fedder F-purity, 15 cells", 300, fedder_cells),
        (6, "closed-form inverse powers of A_n, n=2..12", 10, lemma5),
        (7, "diagonal-span equivalences on unimodular matrices", 60, lemma4),
        (8, "oracle equivalences", 60, oracles),
        (9, "structural properties", 60, structure),
    ];
    let mut failed = 0;
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let budget = Duration::from_secs(limit);
        let verdict = match (&outcome, elapsed <= budget) {
            (Ok(()), true) => "PASS".to_string(),
            (Ok(()), false) => "FAIL (over time budget)".to_string(),
            (Err(why), _) => format!("FAIL ({why})"),
        };
        if !verdict.starts_with("PASS") {
            failed += 1;
        }
        println!(
            "{verdict} criterion {id}: {name} [{:.3}s / {limit}s]",
            elapsed.as_secs_f64()
        );
    }
    println!("acceptance: {} passed, {failed} failed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
