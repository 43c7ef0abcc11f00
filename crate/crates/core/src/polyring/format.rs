use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Monomial, MvPolynomial, VarContext};
use crate::scalar::CoeffRing;

/// Canonical text of a polynomial: terms in descending graded-lex order,
/// `" + "`/`" - "` separators, unit coefficients omitted.
pub fn format_poly<R: CoeffRing>(f: &MvPolynomial<R>) -> String {
    f.to_string()
}

fn write_monomial(out: &mut fmt::Formatter<'_>, ctx: &VarContext, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.exps().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            out.write_str("*")?;
        }
        first = false;
        out.write_str(ctx.name(i))?;
        if e > 1 {
            write!(out, "^{e}")?;
        }
    }
    Ok(())
}

impl<R: CoeffRing> fmt::Display for MvPolynomial<R> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return out.write_str("0");
        }
        for (k, (m, c)) in self.terms().iter().enumerate() {
            let c: BigInt = self.ring().to_bigint(c);
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => out.write_str("-")?,
                (0, false) => {}
                (_, true) => out.write_str(" - ")?,
                (_, false) => out.write_str(" + ")?,
            }
            let mag = c.abs();
            if m.is_one() {
                write!(out, "{mag}")?;
            } else {
                if !mag.is_one() {
                    debug_assert!(!mag.is_zero());
                    write!(out, "{mag}*")?;
                }
                write_monomial(out, self.ctx(), m)?;
            }
        }
        Ok(())
    }
}
