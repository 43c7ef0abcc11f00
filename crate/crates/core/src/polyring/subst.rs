use std::collections::BTreeMap;
use std::sync::Arc;

use rustc_hash::FxHashMap;

use super::{Monomial, MvPolynomial, PolyError, VarContext};
use crate::scalar::CoeffRing;

/// A simultaneous substitution `variable ↦ polynomial`.
///
/// Replacement polynomials all live in one target context. Variables without
/// an assignment map to the variable of the same name in the target context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Substitution<R: CoeffRing> {
    assignments: BTreeMap<String, MvPolynomial<R>>,
    target: Option<Arc<VarContext>>,
}

impl<R: CoeffRing> Default for Substitution<R> {
    fn default() -> Self {
        Substitution {
            assignments: BTreeMap::new(),
            target: None,
        }
    }
}

impl<R: CoeffRing> Substitution<R> {
    pub fn new() -> Self {
        Self::default()
    }

    /// A substitution whose images live in `target` rather than in the
    /// source polynomial's own context.
    pub fn into_context(target: Arc<VarContext>) -> Self {
        Substitution {
            assignments: BTreeMap::new(),
            target: Some(target),
        }
    }

    pub fn assign(&mut self, var: impl Into<String>, image: MvPolynomial<R>) -> &mut Self {
        self.assignments.insert(var.into(), image);
        self
    }

    pub fn with(mut self, var: impl Into<String>, image: MvPolynomial<R>) -> Self {
        self.assign(var, image);
        self
    }

    pub fn get(&self, var: &str) -> Option<&MvPolynomial<R>> {
        self.assignments.get(var)
    }

    pub fn assignments(&self) -> impl Iterator<Item = (&str, &MvPolynomial<R>)> {
        self.assignments.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn len(&self) -> usize {
        self.assignments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignments.is_empty()
    }

    pub fn target(&self) -> Option<&Arc<VarContext>> {
        self.target.as_ref()
    }

    /// Variables assigned to zero, in name order.
    pub fn zeroed(&self) -> impl Iterator<Item = &str> {
        self.assignments
            .iter()
            .filter(|(_, v)| v.is_zero())
            .map(|(k, _)| k.as_str())
    }
}

/// Applies `s` to `f` simultaneously.
pub fn substitute<R: CoeffRing>(
    f: &MvPolynomial<R>,
    s: &Substitution<R>,
) -> Result<MvPolynomial<R>, PolyError> {
    let target = s.target.clone().unwrap_or_else(|| f.ctx().clone());
    let ring = f.ring().clone();

    let mut images: Vec<Option<MvPolynomial<R>>> = vec![None; f.ctx().len()];
    for (name, image) in &s.assignments {
        let i = f.ctx().require(name)?;
        if image.ring() != &ring {
            return Err(PolyError::DomainMismatch {
                left: f.domain(),
                right: image.domain(),
            });
        }
        if **image.ctx() != *target {
            return Err(PolyError::ContextMismatch);
        }
        images[i] = Some(image.clone());
    }
    for i in f.used_vars() {
        if images[i].is_none() {
            let name = f.ctx().name(i);
            let j = target.require(name)?;
            images[i] = Some(MvPolynomial::var(target.clone(), ring.clone(), j));
        }
    }

    let single_term = images
        .iter()
        .flatten()
        .all(|g| g.num_terms() <= 1);
    if single_term {
        return Ok(substitute_monomial_images(f, &images, &target));
    }

    let mut powers: FxHashMap<(usize, u32), MvPolynomial<R>> = FxHashMap::default();
    let mut out: Vec<(Monomial, R::Elem)> = Vec::new();
    for (m, c) in f.terms() {
        let mut prod = MvPolynomial::constant(target.clone(), ring.clone(), c.clone());
        for (i, &e) in m.exps().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let g = images[i].as_ref().expect("image of a used variable");
            let gp = powers.entry((i, e)).or_insert_with(|| g.pow(e));
            prod = prod.mul_capped(gp, None);
            if prod.is_zero() {
                break;
            }
        }
        out.extend(prod.terms().iter().cloned());
    }
    MvPolynomial::from_terms(target, ring, out)
}

// Every image is zero or a single scaled monomial, so each source term maps to
// at most one target term.
fn substitute_monomial_images<R: CoeffRing>(
    f: &MvPolynomial<R>,
    images: &[Option<MvPolynomial<R>>],
    target: &Arc<VarContext>,
) -> MvPolynomial<R> {
    let ring = f.ring();
    let out = f.terms().iter().filter_map(|(m, c)| {
        let mut exps = vec![0u32; target.len()];
        let mut coeff = c.clone();
        for (i, &e) in m.exps().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let g = images[i].as_ref().expect("image of a used variable");
            let (gm, gc) = g.terms().first()?;
            for (slot, &ge) in exps.iter_mut().zip(gm.exps()) {
                *slot = ge
                    .checked_mul(e)
                    .and_then(|v| slot.checked_add(v))
                    .expect("exponent overflow");
            }
            for _ in 0..e {
                coeff = ring.mul(&coeff, gc);
            }
        }
        Some((Monomial::new(exps), coeff))
    });
    MvPolynomial::from_terms(target.clone(), ring.clone(), out.collect::<Vec<_>>())
        .expect("exponent vectors built with the target arity")
}
