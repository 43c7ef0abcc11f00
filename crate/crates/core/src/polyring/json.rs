use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{Monomial, MvPolynomial, PolyError, VarContext};
use crate::scalar::{CoeffRing, CoefficientDomain, Integers, PrimeField};

/// Interchange form of a polynomial. Coefficients are decimal strings so that
/// arbitrarily large integers survive any JSON reader.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub domain: CoefficientDomain,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub exps: Vec<u32>,
}

impl<R: CoeffRing> MvPolynomial<R> {
    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            vars: self.ctx().names().to_vec(),
            domain: self.domain(),
            terms: self
                .coefficients_bigint()
                .map(|(m, c)| TermJson {
                    coeff: c.to_string(),
                    exps: m.exps().to_vec(),
                })
                .collect(),
        }
    }

    /// Reads a polynomial whose declared domain must be `ring`'s.
    pub fn from_json(json: &PolyJson, ring: R) -> Result<Self, PolyError> {
        if json.domain != ring.domain() {
            return Err(PolyError::DomainMismatch {
                left: ring.domain(),
                right: json.domain,
            });
        }
        let ctx = Arc::new(VarContext::new(json.vars.iter().cloned())?);
        let terms = json
            .terms
            .iter()
            .map(|t| {
                let c: BigInt = t.coeff.trim().parse().map_err(|_| {
                    PolyError::Json(format!("coefficient `{}` is not a decimal integer", t.coeff))
                })?;
                Ok((Monomial::new(t.exps.clone()), ring.from_bigint(&c)))
            })
            .collect::<Result<Vec<_>, PolyError>>()?;
        MvPolynomial::from_terms(ctx, ring, terms)
    }
}

/// A polynomial over whichever domain a file declares.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyPoly {
    Integer(MvPolynomial<Integers>),
    ModP(MvPolynomial<PrimeField>),
}

impl AnyPoly {
    pub fn from_json(json: &PolyJson) -> Result<Self, PolyError> {
        match json.domain {
            CoefficientDomain::Integers => {
                MvPolynomial::from_json(json, Integers::new()).map(AnyPoly::Integer)
            }
            CoefficientDomain::ModP(p) => {
                let field = PrimeField::new(p).map_err(|e| PolyError::Json(e.to_string()))?;
                MvPolynomial::from_json(json, field).map(AnyPoly::ModP)
            }
        }
    }

    pub fn from_json_str(s: &str) -> Result<Self, PolyError> {
        let json: PolyJson = serde_json::from_str(s).map_err(|e| PolyError::Json(e.to_string()))?;
        Self::from_json(&json)
    }

    pub fn to_json(&self) -> PolyJson {
        match self {
            AnyPoly::Integer(f) => f.to_json(),
            AnyPoly::ModP(f) => f.to_json(),
        }
    }
}

impl std::fmt::Display for AnyPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AnyPoly::Integer(p) => p.fmt(f),
            AnyPoly::ModP(p) => p.fmt(f),
        }
    }
}
