//! Submodules of `A^r` for `A = P/J`: standard bases with `J` adjoined, syzygies, lifts and
//! Nakayama pruning. Everything in `homcore` is built from these.

use std::collections::{HashSet, VecDeque};

use super::engine::{Engine, StdBasis};
use super::vector::{ModuleOrder, Term, VecArith, Vector};
use crate::error::{Error, Result};
use crate::polycore::{Monomial, Polynomial, RingSpec};

/// Standard basis of the quotient ideal in the ring's own order, computed once per ring.
pub fn quotient_std(ring: &RingSpec) -> &[Polynomial] {
    ring.quotient_std.get_or_init(|| {
        if ring.quotient().is_empty() {
            return Vec::new();
        }
        let engine = Engine::new(*ring.field(), ring.nvars(), ModuleOrder::new(ring.order()), None, 1)
            .with_shifts(vec![0]);
        let gens = ring.quotient().iter().map(|g| Vector::from_poly(g, 0)).collect();
        engine.std_basis(gens).vectors().iter().map(|v| v.entry(0, ring)).collect()
    })
}

/// Lead monomials of the quotient standard basis.
pub fn quotient_leads(ring: &RingSpec) -> Vec<Monomial> {
    quotient_std(ring).iter().filter_map(|g| g.lead_monomial().cloned()).collect()
}

/// Smallest `t` with `m^t` inside the quotient ideal, for local orders with an Artinian
/// quotient. Terms of degree `>= t` can then be discarded in every computation.
pub fn noether_bound(ring: &RingSpec) -> Option<u32> {
    *ring.noether.get_or_init(|| {
        if !ring.is_local() || ring.quotient().is_empty() {
            return None;
        }
        let leads = quotient_leads(ring);
        let n = ring.nvars();
        let mut powers = vec![None; n];
        for m in &leads {
            let support: Vec<usize> = (0..n).filter(|&i| m.exponents()[i] > 0).collect();
            if support.len() == 1 {
                let i = support[0];
                let e = m.exponents()[i];
                if powers[i].is_none_or(|p| e < p) {
                    powers[i] = Some(e);
                }
            }
        }
        if powers.iter().any(|p| p.is_none()) {
            return None;
        }
        let ceiling: u32 = powers.iter().map(|p| p.unwrap() - 1).sum::<u32>() + 1;
        (1..=ceiling).find(|&t| {
            crate::polycore::monomials_of_degree(n, t)
                .iter()
                .all(|m| leads.iter().any(|l| l.divides(m)))
        })
    })
}

/// Monomials implicitly in every lead module because they are truncated away.
pub fn truncation_leads(ring: &RingSpec) -> Vec<Monomial> {
    match noether_bound(ring) {
        Some(t) => crate::polycore::monomials_of_degree(ring.nvars(), t),
        None => Vec::new(),
    }
}

/// Term order used for vectors of `A^r`.
pub fn vector_order(ring: &RingSpec) -> ModuleOrder {
    ModuleOrder::new(ring.order())
}

pub fn arith(ring: &RingSpec) -> VecArith {
    VecArith { field: *ring.field(), order: vector_order(ring), truncate: noether_bound(ring) }
}

pub fn to_vector(ring: &RingSpec, entries: &[Polynomial]) -> Vector {
    let v = Vector::from_entries(entries, &vector_order(ring));
    match noether_bound(ring) {
        Some(t) => Vector { terms: v.terms.into_iter().filter(|x| x.mono.degree() < t).collect() },
        None => v,
    }
}

/// Quotient generators placed in each component `lo..hi`.
fn quotient_vectors(ring: &RingSpec, lo: u32, hi: u32) -> Vec<Vector> {
    let q = quotient_std(ring);
    let t = noether_bound(ring);
    let mut out = Vec::new();
    for c in lo..hi {
        for g in q {
            let g = match t {
                Some(t) => g.truncated(t),
                None => g.clone(),
            };
            if !g.is_zero() {
                out.push(Vector::from_poly(&g, c));
            }
        }
    }
    out
}

/// Row and column degree shifts making every column homogeneous, when such exist and the
/// quotient is homogeneous. Falls back to all zeros.
pub fn grading(ring: &RingSpec, cols: &[Vector], rank: usize) -> (Vec<u32>, Vec<u32>) {
    let fallback = (vec![0; rank], vec![0; cols.len()]);
    if !quotient_std(ring).iter().all(|g| g.is_homogeneous()) {
        return fallback;
    }
    // deg(entry(i, j)) = c_j - r_i; solved by propagation over the bipartite support graph.
    let mut row: Vec<Option<i64>> = vec![None; rank];
    let mut col: Vec<Option<i64>> = vec![None; cols.len()];
    let entries: Vec<Vec<(usize, i64)>> = cols
        .iter()
        .map(|v| {
            let mut e: Vec<(usize, i64)> = Vec::new();
            for t in &v.terms {
                e.push((t.comp as usize, t.mono.degree() as i64));
            }
            e
        })
        .collect();
    for v in &entries {
        let mut seen: Vec<Option<i64>> = vec![None; rank];
        for &(i, d) in v {
            match seen[i] {
                Some(d0) if d0 != d => return fallback,
                _ => seen[i] = Some(d),
            }
        }
    }
    for start in 0..cols.len() {
        if col[start].is_some() {
            continue;
        }
        col[start] = Some(0);
        let mut queue: VecDeque<(bool, usize)> = VecDeque::from([(true, start)]);
        while let Some((is_col, k)) = queue.pop_front() {
            if is_col {
                let c = col[k].unwrap();
                for &(i, d) in &entries[k] {
                    match row[i] {
                        None => {
                            row[i] = Some(c - d);
                            queue.push_back((false, i));
                        }
                        Some(r) if r != c - d => return fallback,
                        _ => {}
                    }
                }
            } else {
                let r = row[k].unwrap();
                for (j, e) in entries.iter().enumerate() {
                    for &(i, d) in e {
                        if i != k {
                            continue;
                        }
                        match col[j] {
                            None => {
                                col[j] = Some(r + d);
                                queue.push_back((true, j));
                            }
                            Some(c) if c != r + d => return fallback,
                            _ => {}
                        }
                    }
                }
            }
        }
    }
    let rows: Vec<i64> = row.iter().map(|r| r.unwrap_or(0)).collect();
    let cs: Vec<i64> = col.iter().map(|c| c.unwrap_or(0)).collect();
    let low = rows.iter().chain(cs.iter()).copied().min().unwrap_or(0).min(0);
    (
        rows.iter().map(|r| (r - low) as u32).collect(),
        cs.iter().map(|c| (c - low) as u32).collect(),
    )
}

fn engine(ring: &RingSpec, order: ModuleOrder, rank: usize, shifts: Vec<u32>) -> Engine {
    Engine::new(*ring.field(), ring.nvars(), order, noether_bound(ring), rank).with_shifts(shifts)
}

/// Standard basis of `<gens> + J A^r` inside `P^r`.
pub fn submodule_basis(ring: &RingSpec, gens: &[Vector], rank: usize) -> StdBasis {
    let (shifts, _) = grading(ring, gens, rank);
    let e = engine(ring, vector_order(ring), rank, shifts);
    let mut all: Vec<Vector> = gens.to_vec();
    all.extend(quotient_vectors(ring, 0, rank as u32));
    e.std_basis(all)
}

/// Standard basis of `J A^r` alone.
pub fn quotient_basis(ring: &RingSpec, rank: usize) -> StdBasis {
    let e = engine(ring, vector_order(ring), rank, vec![0; rank]);
    StdBasis::from_vectors(e, quotient_vectors(ring, 0, rank as u32))
}

/// Reduces `v` modulo `J A^r` when that can be done without a unit factor.
pub fn reduce(ring: &RingSpec, v: &Vector, rank: usize) -> Vector {
    if ring.quotient().is_empty() {
        return v.clone();
    }
    let b = quotient_basis(ring, rank);
    let (h, exact) = b.normal_form_tracked(v, true);
    if exact {
        h
    } else {
        v.clone()
    }
}

/// True when `v` lies in `J A^r`, i.e. is zero in `A^r`.
pub fn is_zero_mod(ring: &RingSpec, v: &Vector, rank: usize) -> bool {
    v.is_zero() || (!ring.quotient().is_empty() && quotient_basis(ring, rank).contains(v))
}

/// `[v ; e_{off+j}]` in `P^r ⊕ P^s`.
fn extended(v: &Vector, off: u32, j: usize, nvars: usize, field: &crate::polycore::FieldSpec) -> Vector {
    let mut terms = v.terms.clone();
    terms.push(Term { mono: Monomial::one(nvars), comp: off + j as u32, coeff: field.one() });
    Vector { terms }
}

/// Generators of the kernel of `A^s -> A^r` sending `e_j` to `cols[j]`.
pub fn syzygies(ring: &RingSpec, cols: &[Vector], rank: usize) -> Vec<Vector> {
    let s = cols.len();
    if s == 0 {
        return Vec::new();
    }
    let r = rank as u32;
    let (rows, cshift) = grading(ring, cols, rank);
    let mut shifts = rows;
    shifts.extend(cshift);
    let e = engine(ring, ModuleOrder::with_split(ring.order(), r), rank + s, shifts);
    let nvars = ring.nvars();
    let mut gens: Vec<Vector> = Vec::with_capacity(s);
    for (j, c) in cols.iter().enumerate() {
        gens.push(e.arith.normalize(extended(c, r, j, nvars, ring.field())));
    }
    gens.extend(quotient_vectors(ring, 0, r));
    gens.extend(quotient_vectors(ring, r, r + s as u32));
    let basis = e.std_basis(gens);
    let qb = quotient_basis(ring, s);
    let mut out = Vec::new();
    for v in basis.vectors() {
        if v.lead().is_some_and(|t| t.comp >= r) {
            let g = v.restrict(r, r + s as u32);
            let (h, exact) = qb.normal_form_tracked(&g, true);
            if h.is_zero() {
                continue;
            }
            out.push(if exact { h } else { g });
        }
    }
    out
}

/// For each target `t`, coefficients `a` with `sum_j a_j cols[j] = t` in `A^r`.
pub fn lift(ring: &RingSpec, cols: &[Vector], rank: usize, targets: &[Vector]) -> Result<Vec<Vector>> {
    let s = cols.len();
    let r = rank as u32;
    let nvars = ring.nvars();
    // The extra last component records a unit multiplier introduced by Mora reduction.
    let h = r + s as u32;
    let (rows, cshift) = grading(ring, cols, rank);
    let mut shifts = rows;
    shifts.extend(cshift);
    shifts.push(0);
    let e = engine(ring, ModuleOrder::with_split(ring.order(), r), rank + s + 1, shifts);
    let mut gens: Vec<Vector> = Vec::with_capacity(s);
    for (j, c) in cols.iter().enumerate() {
        gens.push(e.arith.normalize(extended(c, r, j, nvars, ring.field())));
    }
    gens.extend(quotient_vectors(ring, 0, r));
    let basis = e.std_basis(gens);
    let mut out = Vec::with_capacity(targets.len());
    for t in targets {
        if t.is_zero() {
            out.push(Vector::zero());
            continue;
        }
        let (v, exact) = basis.normal_form_tracked(t, false);
        let (v, w) = if exact {
            (v, None)
        } else {
            let tagged = e.arith.normalize(extended(t, h, 0, nvars, ring.field()));
            let (v2, _) = basis.normal_form_tracked(&tagged, false);
            let w = v2.restrict(h, h + 1);
            (v2, Some(w))
        };
        if v.lead().is_some_and(|x| x.comp < r) {
            return Err(Error::LiftFailed("target is not in the image".into()));
        }
        let g = v.restrict(r, r + s as u32);
        let mut a = e.arith.scale(&ring.field().neg(&ring.field().one()), &g);
        if let Some(w) = w {
            let wp = w.entry(0, ring);
            if !(wp.is_constant() && !wp.is_zero()) {
                return Err(Error::LiftFailed("lift needs a non-constant unit denominator".into()));
            }
            let c = ring.field().inv(&wp.terms()[0].0)?;
            a = e.arith.scale(&c, &a);
        }
        let sorted = arith(ring).normalize(a);
        out.push(reduce(ring, &sorted, s));
    }
    Ok(out)
}

/// True if `f` is a unit of the (localized) ring.
pub fn is_unit(ring: &RingSpec, f: &Polynomial) -> bool {
    ring.is_unit(f)
}

/// Indices of a minimal generating subset of `<gens>` in `A^r` (Nakayama), obtained by
/// cancelling unit entries of the relation matrix. Later generators are dropped first.
pub fn prune(ring: &RingSpec, gens: &[Vector], rank: usize) -> Vec<usize> {
    let n = gens.len();
    let mut alive: Vec<bool> = gens.iter().map(|g| !is_zero_mod(ring, g, rank)).collect();
    let live: Vec<usize> = (0..n).filter(|&i| alive[i]).collect();
    let sub: Vec<Vector> = live.iter().map(|&i| gens[i].clone()).collect();
    let syz = syzygies(ring, &sub, rank);
    let mut cols: Vec<Vec<Polynomial>> = syz.iter().map(|v| v.entries(sub.len(), ring)).collect();
    eliminate_units(ring, &mut cols, |_| true, |row| {
        alive[live[row]] = false;
    });
    (0..n).filter(|&i| alive[i]).collect()
}

/// Repeatedly picks a column with a unit entry, removes the generator (row) of largest index
/// carrying a unit there, and rewrites the other columns so they stay relations of the
/// remaining generators. `on_remove` sees each removed row.
pub fn eliminate_units(
    ring: &RingSpec,
    cols: &mut Vec<Vec<Polynomial>>,
    allowed: impl Fn(usize) -> bool,
    mut on_remove: impl FnMut(usize),
) {
    let t = noether_bound(ring);
    loop {
        let mut pick: Option<(usize, usize)> = None;
        'outer: for (c, col) in cols.iter().enumerate() {
            for row in (0..col.len()).rev() {
                if allowed(row) && !col[row].is_zero() && ring.is_unit(&col[row]) {
                    pick = Some((c, row));
                    break 'outer;
                }
            }
        }
        let Some((c, row)) = pick else { break };
        let pivot = cols.remove(c);
        let u = pivot[row].clone();
        for col in cols.iter_mut() {
            let a = col[row].clone();
            if a.is_zero() {
                continue;
            }
            for (k, entry) in col.iter_mut().enumerate() {
                let v = ring.sub(&ring.mul(&u, entry), &ring.mul(&a, &pivot[k]));
                *entry = match t {
                    Some(t) => v.truncated(t),
                    None => v,
                };
            }
            col[row] = ring.zero();
        }
        cols.retain(|col| col.iter().any(|e| !e.is_zero()));
        on_remove(row);
    }
}

/// Number of standard monomials across all components of a submodule given by its standard
/// basis, i.e. the length of `A^r / U`. Errors when some component is infinite.
pub fn colength(ring: &RingSpec, basis: &StdBasis, rank: usize) -> Result<usize> {
    let nvars = ring.nvars();
    let mut total = 0;
    for c in 0..rank as u32 {
        let mut leads: Vec<Monomial> = basis
            .elems
            .iter()
            .filter_map(|e| e.v.lead())
            .filter(|t| t.comp == c)
            .map(|t| t.mono.clone())
            .collect();
        leads.extend(truncation_leads(ring));
        total += count_standard(&leads, nvars)?;
    }
    Ok(total)
}

/// Monomials not divisible by any of `leads`; errors if there are infinitely many.
pub fn count_standard(leads: &[Monomial], nvars: usize) -> Result<usize> {
    standard_monomials(leads, nvars).map(|v| v.len())
}

pub fn standard_monomials(leads: &[Monomial], nvars: usize) -> Result<Vec<Monomial>> {
    for i in 0..nvars {
        let has_power = leads.iter().any(|m| {
            let e = m.exponents();
            (0..nvars).all(|j| j == i || e[j] == 0)
        });
        if !has_power {
            return Err(Error::InfiniteLength);
        }
    }
    let mut seen: HashSet<Monomial> = HashSet::new();
    let mut out = Vec::new();
    let mut queue: VecDeque<Monomial> = VecDeque::from([Monomial::one(nvars)]);
    while let Some(m) = queue.pop_front() {
        if seen.contains(&m) || leads.iter().any(|l| l.divides(&m)) {
            continue;
        }
        seen.insert(m.clone());
        for i in 0..nvars {
            queue.push_back(m.mul(&Monomial::variable(nvars, i)));
        }
        out.push(m);
    }
    out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.lex_cmp(a)));
    Ok(out)
}
