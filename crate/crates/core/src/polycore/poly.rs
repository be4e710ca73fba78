//! Sparse polynomials in canonical (order-sorted) form.

use std::cmp::Ordering;

use super::field::{FieldSpec, Scalar};
use super::monomial::{Monomial, MonomialOrder};

/// A polynomial as a list of `(coefficient, monomial)` terms, strictly descending in the
/// order it was built with. The zero polynomial has no terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    pub(crate) terms: Vec<(Scalar, Monomial)>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Scalar, Monomial)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&(Scalar, Monomial)> {
        self.terms.first()
    }

    pub fn lead_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.1)
    }

    /// Builds a canonical polynomial from arbitrary terms (duplicates merged, zeros dropped).
    pub fn from_terms(
        field: &FieldSpec,
        order: MonomialOrder,
        mut terms: Vec<(Scalar, Monomial)>,
    ) -> Self {
        terms.sort_by(|a, b| order.cmp(&b.1, &a.1));
        let mut out: Vec<(Scalar, Monomial)> = Vec::with_capacity(terms.len());
        for (c, m) in terms {
            match out.last_mut() {
                Some(last) if last.1 == m => last.0 = field.add(&last.0, &c),
                _ => out.push((c, m)),
            }
        }
        out.retain(|t| !field.is_zero(&t.0));
        Polynomial { terms: out }
    }

    pub fn constant(field: &FieldSpec, nvars: usize, c: Scalar) -> Self {
        if field.is_zero(&c) {
            return Self::zero();
        }
        Polynomial { terms: vec![(c, Monomial::one(nvars))] }
    }

    pub fn monomial(c: Scalar, m: Monomial) -> Self {
        Polynomial { terms: vec![(c, m)] }
    }

    /// Coefficient of the constant monomial.
    pub fn constant_term(&self) -> Option<&Scalar> {
        self.terms.iter().find(|t| t.1.is_one()).map(|t| &t.0)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.1.is_one())
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((_, m)) => self.terms.iter().all(|t| t.1.degree() == m.degree()),
        }
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.1.degree()).min()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.1.degree()).max()
    }

    /// Re-sorts the terms for another order.
    pub fn reordered(&self, order: MonomialOrder) -> Self {
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| order.cmp(&b.1, &a.1));
        Polynomial { terms }
    }

    /// Drops every term of total degree at least `bound`.
    pub fn truncated(&self, bound: u32) -> Self {
        Polynomial {
            terms: self.terms.iter().filter(|t| t.1.degree() < bound).cloned().collect(),
        }
    }
}

/// Merge of two sorted term lists: `f + c * m * g`.
pub(crate) fn add_scaled_shifted(
    field: &FieldSpec,
    order: MonomialOrder,
    f: &[(Scalar, Monomial)],
    c: &Scalar,
    m: &Monomial,
    g: &[(Scalar, Monomial)],
) -> Vec<(Scalar, Monomial)> {
    let mut out = Vec::with_capacity(f.len() + g.len());
    let mut i = 0;
    let mut j = 0;
    let shifted = |t: &(Scalar, Monomial)| (field.mul(c, &t.0), t.1.mul(m));
    let mut pending: Option<(Scalar, Monomial)> = g.first().map(shifted);
    while i < f.len() || pending.is_some() {
        match (&f.get(i), &pending) {
            (Some(a), Some(b)) => match order.cmp(&a.1, &b.1) {
                Ordering::Greater => {
                    out.push((*a).clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(pending.take().unwrap());
                    j += 1;
                    pending = g.get(j).map(shifted);
                }
                Ordering::Equal => {
                    let s = field.add(&a.0, &b.0);
                    if !field.is_zero(&s) {
                        out.push((s, a.1.clone()));
                    }
                    i += 1;
                    j += 1;
                    pending = g.get(j).map(shifted);
                }
            },
            (Some(a), None) => {
                out.push((*a).clone());
                i += 1;
            }
            (None, Some(_)) => {
                out.push(pending.take().unwrap());
                j += 1;
                pending = g.get(j).map(shifted);
            }
            (None, None) => unreachable!(),
        }
    }
    out
}
