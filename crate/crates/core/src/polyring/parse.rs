//! Text grammar:
//!
//! ```text
//! poly    := ['+'|'-'] term (('+'|'-') term)*
//! term    := integer | integer '*' varpow ('*' varpow)* | varpow ('*' varpow)*
//! varpow  := var ('^' positive-integer)?
//! ```
//!
//! Whitespace is insignificant. Variable names are looked up in the context.

use std::sync::Arc;

use num_bigint::BigInt;

use super::{Monomial, MvPolynomial, PolyError, VarContext};
use crate::scalar::CoeffRing;

pub fn parse_poly<R: CoeffRing>(
    text: &str,
    ctx: &Arc<VarContext>,
    ring: R,
) -> Result<MvPolynomial<R>, PolyError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        ctx,
    };
    let mut terms = Vec::new();
    p.skip_ws();
    let mut negative = match p.peek() {
        Some(b'-') => {
            p.pos += 1;
            true
        }
        Some(b'+') => {
            p.pos += 1;
            false
        }
        _ => false,
    };
    loop {
        let (mut coeff, mono) = p.term()?;
        if negative {
            coeff = -coeff;
        }
        terms.push((mono, ring.from_bigint(&coeff)));
        p.skip_ws();
        match p.peek() {
            None => break,
            Some(b'+') => negative = false,
            Some(b'-') => negative = true,
            Some(c) => return Err(p.syntax(format!("unexpected `{}`", c as char))),
        }
        p.pos += 1;
    }
    MvPolynomial::from_terms(ctx.clone(), ring, terms)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ctx: &'a VarContext,
}

impl Parser<'_> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn syntax(&self, msg: impl Into<String>) -> PolyError {
        PolyError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn digits(&mut self) -> &str {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits")
    }

    fn integer(&mut self) -> Result<BigInt, PolyError> {
        let start = self.pos;
        let digits = self.digits().to_string();
        // reject decimals, fractions and exponents in coefficient position
        if let Some(b'.' | b'/' | b'e' | b'E') = self.peek() {
            self.pos += 1;
            while self
                .peek()
                .is_some_and(|c| c.is_ascii_alphanumeric() || c == b'.' || c == b'-')
            {
                self.pos += 1;
            }
            return Err(PolyError::CoefficientNotInteger {
                pos: start,
                text: String::from_utf8_lossy(&self.src[start..self.pos]).into_owned(),
            });
        }
        Ok(digits.parse().expect("non-empty digit run"))
    }

    fn term(&mut self) -> Result<(BigInt, Monomial), PolyError> {
        self.skip_ws();
        let mut exps = vec![0u32; self.ctx.len()];
        let coeff = match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let c = self.integer()?;
                self.skip_ws();
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                    self.varpow(&mut exps)?;
                } else {
                    return Ok((c, Monomial::new(exps)));
                }
                c
            }
            Some(c) if c.is_ascii_alphabetic() => {
                self.varpow(&mut exps)?;
                BigInt::from(1)
            }
            Some(b'.') => {
                return Err(PolyError::CoefficientNotInteger {
                    pos: self.pos,
                    text: ".".into(),
                })
            }
            Some(c) => return Err(self.syntax(format!("expected a term, found `{}`", c as char))),
            None => return Err(self.syntax("expected a term, found end of input")),
        };
        loop {
            self.skip_ws();
            if self.peek() != Some(b'*') {
                break;
            }
            self.pos += 1;
            self.varpow(&mut exps)?;
        }
        Ok((coeff, Monomial::new(exps)))
    }

    fn varpow(&mut self, exps: &mut [u32]) -> Result<(), PolyError> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() => {}
            Some(c) if c.is_ascii_digit() => {
                return Err(self.syntax("integer factor allowed only at the start of a term"))
            }
            _ => return Err(self.syntax("expected a variable")),
        }
        while self
            .peek()
            .is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_')
        {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii identifier");
        let idx = self.ctx.require(name)?;
        self.skip_ws();
        let mut e = 1u32;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let at = self.pos;
            let d = self.digits();
            if d.is_empty() {
                return Err(self.syntax("expected an exponent after `^`"));
            }
            e = d.parse().map_err(|_| PolyError::Syntax {
                pos: at,
                msg: "exponent out of range".into(),
            })?;
            if e == 0 {
                return Err(PolyError::Syntax {
                    pos: at,
                    msg: "exponent must be positive".into(),
                });
            }
        }
        exps[idx] = exps[idx].checked_add(e).ok_or(PolyError::ExponentOverflow)?;
        Ok(())
    }
}
