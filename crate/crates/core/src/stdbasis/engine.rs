//! Buchberger's algorithm for submodules of `P^r`, with Mora's ecart-driven normal form for
//! local orders.
//!
//! When the ambient quotient is Artinian, callers pass a truncation degree `t` with
//! `m^t` contained in the quotient ideal: all terms of degree `>= t` vanish, the set of
//! surviving monomials is finite and plain division terminates, so Mora's reducer-set
//! augmentation is skipped.

use std::cmp::{Ordering, Reverse};
use std::collections::{BinaryHeap, HashMap, HashSet};

use super::vector::{ModuleOrder, Term, VecArith, Vector};
use crate::polycore::{FieldSpec, Monomial, Scalar};

#[derive(Debug, Clone)]
pub struct Elem {
    pub v: Vector,
    pub ecart: u32,
}

impl Elem {
    fn lead(&self) -> &Term {
        self.v.lead().expect("basis elements are nonzero")
    }
}

/// Parameters shared by every standard-basis computation on one free module.
#[derive(Debug, Clone)]
pub struct Engine {
    pub arith: VecArith,
    pub nvars: usize,
    /// Degree shift of each component, used for ecarts and pair selection.
    pub shifts: Vec<u32>,
    /// Number of components the vectors live in; the product criterion needs rank one.
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct QueueKey {
    degree: u32,
    lcm: Vec<u32>,
    comp: u32,
    kind: u8,
    i: usize,
    j: usize,
}

impl Engine {
    pub fn new(field: FieldSpec, nvars: usize, order: ModuleOrder, truncate: Option<u32>, rank: usize) -> Self {
        Engine { arith: VecArith { field, order, truncate }, nvars, shifts: Vec::new(), rank }
    }

    pub fn with_shifts(mut self, shifts: Vec<u32>) -> Self {
        self.shifts = shifts;
        self
    }

    pub fn field(&self) -> &FieldSpec {
        &self.arith.field
    }

    /// Mora's normal form is needed for local orders without a truncation degree.
    pub fn uses_mora(&self) -> bool {
        self.arith.order.mono.is_local() && self.arith.truncate.is_none()
    }

    #[inline]
    fn shift(&self, comp: u32) -> u32 {
        self.shifts.get(comp as usize).copied().unwrap_or(0)
    }

    #[inline]
    fn term_degree(&self, t: &Term) -> u32 {
        t.mono.degree() + self.shift(t.comp)
    }

    pub fn ecart(&self, v: &Vector) -> u32 {
        match v.lead() {
            None => 0,
            Some(lt) => {
                let top = v.terms.iter().map(|t| self.term_degree(t)).max().unwrap_or(0);
                top.saturating_sub(self.term_degree(lt))
            }
        }
    }

    pub fn elem(&self, v: Vector) -> Elem {
        let ecart = self.ecart(&v);
        Elem { v, ecart }
    }

    /// `h - (lc(h)/lc(g)) * (lm(h)/lm(g)) * g`, cancelling the lead of `h`.
    fn reduce_lead_by(&self, h: &Vector, pos: usize, g: &Vector) -> Vector {
        let ht = &h.terms[pos];
        let gt = g.lead().expect("nonzero reducer");
        let q = gt.mono.quotient_of(&ht.mono);
        let field = &self.arith.field;
        let c = if field.is_one(&gt.coeff) {
            field.neg(&ht.coeff)
        } else {
            field.neg(&field.div(&ht.coeff, &gt.coeff).expect("nonzero lead"))
        };
        self.arith.add_scaled(h, &c, &q, g)
    }

    /// S-vector of two basis elements whose leads share a component.
    fn spoly(&self, a: &Vector, b: &Vector) -> Vector {
        let (la, lb) = (a.lead().unwrap(), b.lead().unwrap());
        let l = la.mono.lcm(&lb.mono);
        let field = &self.arith.field;
        let ca = field.inv(&la.coeff).unwrap();
        let cb = field.neg(&field.inv(&lb.coeff).unwrap());
        let left = self.arith.add_scaled(&Vector::zero(), &ca, &la.mono.quotient_of(&l), a);
        self.arith.add_scaled(&left, &cb, &lb.mono.quotient_of(&l), b)
    }
}

/// A computed standard basis, indexed for repeated reductions.
#[derive(Debug, Clone)]
pub struct StdBasis {
    pub engine: Engine,
    pub elems: Vec<Elem>,
    by_comp: HashMap<u32, Vec<usize>>,
}

impl StdBasis {
    fn empty(engine: Engine) -> Self {
        StdBasis { engine, elems: Vec::new(), by_comp: HashMap::new() }
    }

    /// Wraps vectors already known to form a standard basis.
    pub fn from_vectors(engine: Engine, vs: Vec<Vector>) -> Self {
        let mut b = Self::empty(engine);
        for v in vs {
            if !v.is_zero() {
                b.push(v);
            }
        }
        b
    }

    fn push(&mut self, v: Vector) -> usize {
        let e = self.engine.elem(v);
        let idx = self.elems.len();
        self.by_comp.entry(e.lead().comp).or_default().push(idx);
        self.elems.push(e);
        idx
    }

    pub fn vectors(&self) -> Vec<Vector> {
        self.elems.iter().map(|e| e.v.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    fn divisor_of(&self, t: &Term, skip: Option<usize>) -> Option<usize> {
        let cands = self.by_comp.get(&t.comp)?;
        let mut best: Option<usize> = None;
        for &k in cands {
            if Some(k) == skip {
                continue;
            }
            let e = &self.elems[k];
            if e.lead().mono.divides(&t.mono) {
                match best {
                    Some(b) if self.elems[b].ecart <= e.ecart => {}
                    _ => best = Some(k),
                }
                if e.ecart == 0 {
                    break;
                }
            }
        }
        best
    }

    /// Normal form of `f`: a weak (lead-only) Mora normal form for local orders without
    /// truncation, otherwise ordinary division. With `full`, tails are reduced as well
    /// where that terminates.
    pub fn normal_form(&self, f: &Vector, full: bool) -> Vector {
        self.normal_form_tracked(f, full).0
    }

    /// Like [`normal_form`](Self::normal_form); the flag is false when Mora's reducer set
    /// was augmented, in which case the result is only determined up to a unit factor.
    pub fn normal_form_tracked(&self, f: &Vector, full: bool) -> (Vector, bool) {
        if self.engine.uses_mora() {
            let (h, exact) = self.mora_nf(f.clone());
            if full && self.engine.ecart(&h) == 0 {
                (self.reduce_tail_homogeneous(h), exact)
            } else {
                (h, exact)
            }
        } else {
            (self.plain_nf(f.clone(), full, None), true)
        }
    }

    fn plain_nf(&self, mut h: Vector, full: bool, skip: Option<usize>) -> Vector {
        let mut pos = 0;
        while pos < h.terms.len() {
            match self.divisor_of(&h.terms[pos], skip) {
                Some(k) => h = self.engine.reduce_lead_by(&h, pos, &self.elems[k].v),
                None if full => pos += 1,
                None => break,
            }
        }
        h
    }

    /// Tail reduction using only homogeneous reducers, which never leave the degree.
    fn reduce_tail_homogeneous(&self, mut h: Vector) -> Vector {
        let mut pos = 1;
        while pos < h.terms.len() {
            let t = &h.terms[pos];
            let found = self.by_comp.get(&t.comp).and_then(|c| {
                c.iter().copied().find(|&k| self.elems[k].ecart == 0 && self.elems[k].lead().mono.divides(&t.mono))
            });
            match found {
                Some(k) => h = self.engine.reduce_lead_by(&h, pos, &self.elems[k].v),
                None => pos += 1,
            }
        }
        h
    }

    fn mora_nf(&self, mut h: Vector) -> (Vector, bool) {
        let mut extra: Vec<Elem> = Vec::new();
        loop {
            let Some(lt) = h.lead() else { return (h, extra.is_empty()) };
            let mut best: Option<(u32, Option<usize>, usize)> =
                self.divisor_of(lt, None).map(|k| (self.elems[k].ecart, Some(k), 0));
            for (x, e) in extra.iter().enumerate() {
                let el = e.lead();
                if el.comp == lt.comp && el.mono.divides(&lt.mono)
                    && best.as_ref().is_none_or(|b| e.ecart < b.0) {
                        best = Some((e.ecart, None, x));
                    }
            }
            let Some((ecart, from_basis, xi)) = best else { return (h, extra.is_empty()) };
            let hecart = self.engine.ecart(&h);
            let reducer = match from_basis {
                Some(k) => self.elems[k].v.clone(),
                None => extra[xi].v.clone(),
            };
            if ecart > hecart {
                extra.push(Elem { v: h.clone(), ecart: hecart });
            }
            h = self.engine.reduce_lead_by(&h, 0, &reducer);
        }
    }

    /// True if `f` reduces to zero.
    pub fn contains(&self, f: &Vector) -> bool {
        self.normal_form(f, false).is_zero()
    }
}

impl Engine {
    /// Standard basis of the submodule generated by `gens`: minimal, monic, tail-reduced
    /// whenever reduction terminates, sorted by descending leading term.
    pub fn std_basis(&self, gens: Vec<Vector>) -> StdBasis {
        let raw = self.buchberger(gens);
        self.finalize(raw)
    }

    fn buchberger(&self, gens: Vec<Vector>) -> StdBasis {
        let mut gens: Vec<Vector> =
            gens.into_iter().map(|g| self.arith.normalize(g)).filter(|g| !g.is_zero()).collect();
        let mut basis = StdBasis::empty(self.clone());
        let mut heap: BinaryHeap<Reverse<QueueKey>> = BinaryHeap::new();
        let mut pending: HashSet<(usize, usize)> = HashSet::new();
        for (k, g) in gens.iter().enumerate() {
            let lt = g.lead().unwrap();
            heap.push(Reverse(QueueKey {
                degree: self.term_degree(lt),
                lcm: lt.mono.exponents().to_vec(),
                comp: lt.comp,
                kind: 0,
                i: k,
                j: 0,
            }));
        }
        while let Some(Reverse(key)) = heap.pop() {
            let h = if key.kind == 0 {
                basis.normal_form(&gens[key.i], false)
            } else {
                let (i, j) = (key.i, key.j);
                if !pending.remove(&(i, j)) {
                    continue;
                }
                let lcm = Monomial::from_exponents(&key.lcm);
                let chain = basis.by_comp.get(&key.comp).is_some_and(|ks| {
                    ks.iter().any(|&k| {
                        k != i
                            && k != j
                            && basis.elems[k].lead().mono.divides(&lcm)
                            && !pending.contains(&(i.min(k), i.max(k)))
                            && !pending.contains(&(j.min(k), j.max(k)))
                    })
                });
                if chain {
                    continue;
                }
                let s = self.spoly(&basis.elems[i].v, &basis.elems[j].v);
                basis.normal_form(&s, false)
            };
            if h.is_zero() {
                continue;
            }
            let h = self.arith.monic(h);
            let lt = h.lead().unwrap().clone();
            // Under truncation the monomials of degree `t` act as implicit generators of the
            // upper block. Their S-vectors with `h` are monomial multiples of `h` whose
            // upper-block part vanishes; the lower-block part survives and must be queued.
            if let Some(t) = self.arith.truncate {
                let d = lt.mono.degree();
                if lt.comp < self.arith.order.split && d < t && h.terms.iter().any(|x| x.comp >= self.arith.order.split) {
                    for w in crate::polycore::monomials_of_degree(self.nvars, t - d) {
                        let m = self.arith.add_scaled(&Vector::zero(), &self.arith.field.one(), &w, &h);
                        if m.is_zero() {
                            continue;
                        }
                        let mt = m.lead().unwrap();
                        heap.push(Reverse(QueueKey {
                            degree: self.term_degree(mt),
                            lcm: mt.mono.exponents().to_vec(),
                            comp: mt.comp,
                            kind: 0,
                            i: gens.len(),
                            j: 0,
                        }));
                        gens.push(m);
                    }
                }
            }
            let idx = basis.push(h);
            let others: Vec<usize> =
                basis.by_comp.get(&lt.comp).map(|v| v.iter().copied().filter(|&k| k != idx).collect()).unwrap_or_default();
            for k in others {
                let kl = &basis.elems[k].lead().mono;
                if self.rank == 1 && kl.is_coprime(&lt.mono) {
                    continue;
                }
                let l = kl.lcm(&lt.mono);
                pending.insert((k, idx));
                heap.push(Reverse(QueueKey {
                    degree: l.degree() + self.shift(lt.comp),
                    lcm: l.exponents().to_vec(),
                    comp: lt.comp,
                    kind: 1,
                    i: k,
                    j: idx,
                }));
            }
        }
        basis
    }

    fn finalize(&self, raw: StdBasis) -> StdBasis {
        let n = raw.elems.len();
        let keep: Vec<usize> = (0..n)
            .filter(|&i| {
                let li = raw.elems[i].lead();
                !(0..n).any(|j| {
                    j != i && {
                        let lj = raw.elems[j].lead();
                        lj.comp == li.comp && lj.mono.divides(&li.mono) && (lj.mono != li.mono || j < i)
                    }
                })
            })
            .collect();
        let minimal = StdBasis::from_vectors(self.clone(), keep.iter().map(|&i| raw.elems[i].v.clone()).collect());
        let mut out: Vec<Vector> = Vec::with_capacity(minimal.len());
        for e in minimal.elems.iter() {
            let v = if !self.uses_mora() {
                let lead = Vector { terms: vec![e.v.terms[0].clone()] };
                let tail = Vector { terms: e.v.terms[1..].to_vec() };
                let tail = minimal.plain_nf(tail, true, None);
                self.arith.add(&lead, &tail, self.nvars)
            } else if e.ecart == 0 {
                minimal.reduce_tail_homogeneous(e.v.clone())
            } else {
                e.v.clone()
            };
            out.push(self.arith.monic(v));
        }
        out.sort_by(|a, b| self.arith.order.cmp(b.lead().unwrap(), a.lead().unwrap()));
        StdBasis::from_vectors(self.clone(), out)
    }

    /// Post-hoc Buchberger criterion: every S-vector of `basis` reduces to zero.
    pub fn certify(&self, basis: &StdBasis) -> bool {
        let n = basis.elems.len();
        for i in 0..n {
            for j in i + 1..n {
                let (li, lj) = (basis.elems[i].lead(), basis.elems[j].lead());
                if li.comp != lj.comp {
                    continue;
                }
                let s = self.spoly(&basis.elems[i].v, &basis.elems[j].v);
                if !basis.contains(&s) {
                    return false;
                }
            }
        }
        true
    }

    /// Leading coefficient helper for callers building cofactors.
    pub fn lead_coeff(v: &Vector) -> Option<&Scalar> {
        v.lead().map(|t| &t.coeff)
    }

    pub fn cmp_terms(&self, a: &Term, b: &Term) -> Ordering {
        self.arith.order.cmp(a, b)
    }
}
