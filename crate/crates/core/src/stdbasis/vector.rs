//! Sparse vectors in free modules `P^r` and the module term orders used by the engine.

use std::cmp::Ordering;

use crate::polycore::{FieldSpec, Monomial, MonomialOrder, Polynomial, RingSpec, Scalar};

/// A module term `coeff * mono * e_comp`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub mono: Monomial,
    pub comp: u32,
    pub coeff: Scalar,
}

/// A vector of `P^r`, stored as terms sorted strictly descending in a [`ModuleOrder`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Vector {
    pub terms: Vec<Term>,
}

impl Vector {
    pub fn zero() -> Self {
        Vector { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    /// Embeds `f` as `f * e_comp`; the term order of `f` is kept, which is compatible with
    /// any module order on a single component.
    pub fn from_poly(f: &Polynomial, comp: u32) -> Self {
        Vector {
            terms: f
                .terms()
                .iter()
                .map(|(c, m)| Term { mono: m.clone(), comp, coeff: c.clone() })
                .collect(),
        }
    }

    /// Builds a vector from per-component polynomials.
    pub fn from_entries(entries: &[Polynomial], order: &ModuleOrder) -> Self {
        let mut terms: Vec<Term> = Vec::new();
        for (i, f) in entries.iter().enumerate() {
            for (c, m) in f.terms() {
                terms.push(Term { mono: m.clone(), comp: i as u32, coeff: c.clone() });
            }
        }
        terms.sort_by(|a, b| order.cmp(b, a));
        Vector { terms }
    }

    /// The component polynomial at index `comp`, in `ring` order.
    pub fn entry(&self, comp: u32, ring: &RingSpec) -> Polynomial {
        ring.from_terms(
            self.terms
                .iter()
                .filter(|t| t.comp == comp)
                .map(|t| (t.coeff.clone(), t.mono.clone()))
                .collect(),
        )
    }

    /// All component polynomials `0..rank`.
    pub fn entries(&self, rank: usize, ring: &RingSpec) -> Vec<Polynomial> {
        let mut buckets: Vec<Vec<(Scalar, Monomial)>> = vec![Vec::new(); rank];
        for t in &self.terms {
            buckets[t.comp as usize].push((t.coeff.clone(), t.mono.clone()));
        }
        buckets.into_iter().map(|b| ring.from_terms(b)).collect()
    }

    pub fn max_comp(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.comp).max()
    }

    /// Keeps only components in `range`, renumbered to start at 0.
    pub fn restrict(&self, lo: u32, hi: u32) -> Vector {
        Vector {
            terms: self
                .terms
                .iter()
                .filter(|t| t.comp >= lo && t.comp < hi)
                .map(|t| Term { mono: t.mono.clone(), comp: t.comp - lo, coeff: t.coeff.clone() })
                .collect(),
        }
    }

    pub fn has_comp_below(&self, bound: u32) -> bool {
        self.terms.iter().any(|t| t.comp < bound)
    }
}

/// Term order on `P^r`.
///
/// Components at or above `split` form a lower block: any term of the upper block is larger
/// than every term of the lower one. Within a block terms compare by monomial first and then by
/// component, smaller index being larger.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModuleOrder {
    pub mono: MonomialOrder,
    pub split: u32,
}

impl ModuleOrder {
    pub fn new(mono: MonomialOrder) -> Self {
        ModuleOrder { mono, split: u32::MAX }
    }

    pub fn with_split(mono: MonomialOrder, split: u32) -> Self {
        ModuleOrder { mono, split }
    }

    #[inline]
    pub fn cmp(&self, a: &Term, b: &Term) -> Ordering {
        self.cmp_parts(&a.mono, a.comp, &b.mono, b.comp)
    }

    #[inline]
    pub fn cmp_parts(&self, am: &Monomial, ac: u32, bm: &Monomial, bc: u32) -> Ordering {
        let (la, lb) = (ac >= self.split, bc >= self.split);
        if la != lb {
            return if la { Ordering::Less } else { Ordering::Greater };
        }
        match self.mono.cmp(am, bm) {
            Ordering::Equal => bc.cmp(&ac),
            o => o,
        }
    }
}

/// Arithmetic on vectors in a fixed field, order and (optional) truncation degree.
#[derive(Debug, Clone)]
pub struct VecArith {
    pub field: FieldSpec,
    pub order: ModuleOrder,
    /// Terms whose monomial has total degree at least this bound are dropped.
    pub truncate: Option<u32>,
}

impl VecArith {
    pub fn normalize(&self, mut v: Vector) -> Vector {
        v.terms.sort_by(|a, b| self.order.cmp(b, a));
        let mut out: Vec<Term> = Vec::with_capacity(v.terms.len());
        for t in v.terms {
            if let Some(b) = self.truncate {
                if t.mono.degree() >= b {
                    continue;
                }
            }
            match out.last_mut() {
                Some(last) if last.comp == t.comp && last.mono == t.mono => {
                    last.coeff = self.field.add(&last.coeff, &t.coeff)
                }
                _ => out.push(t),
            }
        }
        out.retain(|t| !self.field.is_zero(&t.coeff));
        Vector { terms: out }
    }

    /// `f + c * m * g`.
    pub fn add_scaled(&self, f: &Vector, c: &Scalar, m: &Monomial, g: &Vector) -> Vector {
        let field = &self.field;
        let mut out = Vec::with_capacity(f.terms.len() + g.terms.len());
        let shifted = |t: &Term| -> Option<Term> {
            let mono = t.mono.mul(m);
            if let Some(b) = self.truncate {
                if mono.degree() >= b {
                    return None;
                }
            }
            Some(Term { mono, comp: t.comp, coeff: field.mul(c, &t.coeff) })
        };
        let mut gi = g.terms.iter().filter_map(shifted).peekable();
        let mut fi = f.terms.iter().peekable();
        loop {
            match (fi.peek(), gi.peek()) {
                (Some(a), Some(b)) => match self.order.cmp(a, b) {
                    Ordering::Greater => out.push(fi.next().unwrap().clone()),
                    Ordering::Less => out.push(gi.next().unwrap()),
                    Ordering::Equal => {
                        let s = field.add(&a.coeff, &b.coeff);
                        if !field.is_zero(&s) {
                            out.push(Term { mono: a.mono.clone(), comp: a.comp, coeff: s });
                        }
                        fi.next();
                        gi.next();
                    }
                },
                (Some(_), None) => out.push(fi.next().unwrap().clone()),
                (None, Some(_)) => out.push(gi.next().unwrap()),
                (None, None) => break,
            }
        }
        Vector { terms: out }
    }

    pub fn add(&self, f: &Vector, g: &Vector, nvars: usize) -> Vector {
        self.add_scaled(f, &self.field.one(), &Monomial::one(nvars), g)
    }

    pub fn sub(&self, f: &Vector, g: &Vector, nvars: usize) -> Vector {
        self.add_scaled(f, &self.field.neg(&self.field.one()), &Monomial::one(nvars), g)
    }

    pub fn scale(&self, c: &Scalar, f: &Vector) -> Vector {
        if self.field.is_zero(c) {
            return Vector::zero();
        }
        Vector {
            terms: f
                .terms
                .iter()
                .map(|t| Term { mono: t.mono.clone(), comp: t.comp, coeff: self.field.mul(c, &t.coeff) })
                .collect(),
        }
    }

    /// `p * v` for a polynomial `p`.
    pub fn mul_poly(&self, p: &Polynomial, v: &Vector) -> Vector {
        let mut acc = Vector::zero();
        for (c, m) in p.terms() {
            acc = self.add_scaled(&acc, c, m, v);
        }
        acc
    }

    pub fn monic(&self, v: Vector) -> Vector {
        match v.lead() {
            None => v,
            Some(t) if self.field.is_one(&t.coeff) => v,
            Some(t) => {
                let inv = self.field.inv(&t.coeff).expect("nonzero lead");
                self.scale(&inv, &v)
            }
        }
    }
}
