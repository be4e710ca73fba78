use std::collections::BTreeSet;

use liaison::polycore::{parse_poly, parse_ring, FieldSpec, Monomial, Polynomial, Ring};
use liaison::stdbasis::{
    colon_ideal, contained_in_power, ideal_member, intersect, is_gorenstein_artinian, krull_dim, mingens,
    normal_form, socle_dim, vspace_dim, Ideal,
};
use proptest::prelude::*;

fn ring(text: &str) -> Ring {
    parse_ring(text, FieldSpec::prime(32003).unwrap()).unwrap()
}

fn p(r: &Ring, s: &str) -> Polynomial {
    parse_poly(s, r).unwrap()
}

fn ideal(r: &Ring, gens: &[&str]) -> Ideal {
    Ideal::new(r, gens.iter().map(|g| p(r, g)).collect())
}

fn shown(r: &Ring, fs: &[Polynomial]) -> Vec<String> {
    fs.iter().map(|f| r.format(f)).collect()
}

#[test]
fn grevlex_basis_by_hand() {
    let r = ring("QQ[x,y] grevlex");
    let i = ideal(&r, &["x^2+y^2", "x*y"]);
    let mut got = shown(&r, i.std_basis());
    got.sort();
    assert_eq!(got, vec!["x*y", "x^2 + y^2", "y^3"]);
}

#[test]
fn local_lead_is_lowest_degree() {
    let r = ring("QQ[x] local");
    let i = ideal(&r, &["x - x^2"]);
    assert_eq!(i.lead_ideal().gens, vec![Monomial::from_exponents(&[1])]);
    assert!(normal_form(&p(&r, "x"), &i).is_zero());
    assert!(ideal_member(&p(&r, "x"), &i));
    assert!(!ideal_member(&p(&r, "1"), &i));
}

#[test]
fn normal_forms() {
    let r = ring("QQ[x,y] grevlex");
    assert!(normal_form(&p(&r, "x^3"), &ideal(&r, &["x^2"])).is_zero());
    assert_eq!(normal_form(&p(&r, "y^2"), &ideal(&r, &["x"])), p(&r, "y^2"));
    assert!(!ideal_member(&p(&r, "x"), &ideal(&r, &["y"])));
    assert!(ideal_member(&r.zero(), &ideal(&r, &["y"])));
}

#[test]
fn colon_and_intersection_small() {
    let r = ring("QQ[x,y] local");
    let c = colon_ideal(&ideal(&r, &["x*y"]), &ideal(&r, &["x"])).unwrap();
    assert_eq!(shown(&r, c.std_basis()), vec!["y"]);
    let i = ideal(&r, &["x^2", "y^3 + x*y"]);
    let by_unit = colon_ideal(&i, &Ideal::unit(&r)).unwrap();
    assert_eq!(by_unit.std_basis(), i.std_basis());
    let m = intersect(&ideal(&r, &["x"]), &ideal(&r, &["y"])).unwrap();
    assert_eq!(shown(&r, m.std_basis()), vec!["x*y"]);
    assert_eq!(intersect(&i, &i).unwrap().std_basis(), i.std_basis());
    assert_eq!(intersect(&i, &Ideal::unit(&r)).unwrap().std_basis(), i.std_basis());
}

#[test]
fn mingens_and_powers() {
    let r = ring("QQ[x,y] local");
    assert_eq!(mingens(&ideal(&r, &["x", "x^2"])).unwrap(), vec![p(&r, "x")]);
    assert!(contained_in_power(&ideal(&r, &["x^2"]), 2));
    assert!(!contained_in_power(&ideal(&r, &["x"]), 2));
    let g = ring("QQ[x,y] grevlex");
    assert!(mingens(&ideal(&g, &["x+y^2"])).is_err());
    assert_eq!(mingens(&ideal(&g, &["x^2", "x*y", "x^2+x*y"])).unwrap().len(), 2);
}

#[test]
fn dimensions_and_socles() {
    assert_eq!(krull_dim(&ring("QQ[x,y,z] local / (x^2+y^2+z^2)")), 2);
    assert_eq!(krull_dim(&ring("QQ[x,y] local / (x^2, y^2)")), 0);
    assert_eq!(krull_dim(&ring("QQ[x,y,z] local")), 3);
    assert_eq!(vspace_dim(&ring("QQ[x] local / (x^3)")).unwrap(), 3);
    assert_eq!(vspace_dim(&ring("QQ[x,y] local / (x^2, y^2)")).unwrap(), 4);
    assert_eq!(vspace_dim(&ring("QQ[x,y,z] local / (x, y, z)")).unwrap(), 1);
    assert!(vspace_dim(&ring("QQ[x,y] local / (x^2)")).is_err());
    let a = ring("QQ[x] local / (x^3)");
    assert_eq!(socle_dim(&a).unwrap(), 1);
    assert!(is_gorenstein_artinian(&a).unwrap());
    assert_eq!(socle_dim(&ring("QQ[x,y] local / (x^2, y^2)")).unwrap(), 1);
    let b = ring("QQ[x,y] local / (x^2, x*y, y^2)");
    assert_eq!(socle_dim(&b).unwrap(), 2);
    assert!(!is_gorenstein_artinian(&b).unwrap());
    assert!(socle_dim(&ring("QQ[x,y] local / (x^2)")).is_err());
}

/// Hilbert function of `R/I` in degree `d` from the lead ideal, for homogeneous `I`.
fn hilbert(i: &Ideal, d: u32) -> usize {
    let li = i.lead_ideal();
    liaison::polycore::monomials_of_degree(i.ring().nvars(), d).iter().filter(|m| !li.contains(m)).count()
}

#[test]
fn hypersurface_colon_is_a_complete_intersection() {
    // Independent elimination over QQ and GF(32003) gives R/I the Hilbert function
    // 1,3,5,7,9,11,11,9,7,5,3,1 and shows I is generated by two sextics.
    let r = ring("GF(32003)[x,y,z] local / (x^2+y^2+z^2)");
    let i = colon_ideal(&ideal(&r, &["x^7", "y^7"]), &ideal(&r, &["x*y+y*z+x*z"])).unwrap();
    let g = ring("GF(32003)[x,y,z] grevlex / (x^2+y^2+z^2)");
    let ig = colon_ideal(&ideal(&g, &["x^7", "y^7"]), &ideal(&g, &["x*y+y*z+x*z"])).unwrap();
    let h: Vec<usize> = (0..14).map(|d| hilbert(&ig, d)).collect();
    assert_eq!(h, vec![1, 3, 5, 7, 9, 11, 11, 9, 7, 5, 3, 1, 0, 0]);
    assert_eq!(ig.std_basis().len(), 13);
    let mg = mingens(&i).unwrap();
    assert_eq!(mg.len(), 2);
    assert_eq!(mingens(&ig).unwrap().len(), 2);
    assert!(mg.iter().all(|f| f.min_degree() == Some(6)));
    assert!(contained_in_power(&i, 6));
    assert!(!contained_in_power(&i, 7));
}

// ---- oracles -------------------------------------------------------------------------

type Mono = Vec<u32>;

fn divides(a: &Mono, b: &Mono) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn in_monomial_ideal(gens: &[Mono], m: &Mono) -> bool {
    gens.iter().any(|g| divides(g, m))
}

/// Monomials of total degree at most `d` in two variables.
fn box_monomials(d: u32) -> Vec<Mono> {
    let mut out = Vec::new();
    for a in 0..=d {
        for b in 0..=d - a {
            out.push(vec![a, b]);
        }
    }
    out
}

/// Brute-force monomial colon: a monomial m is in (I : J) iff m*g ∈ I for every generator g.
fn colon_oracle(i: &[Mono], j: &[Mono], d: u32) -> BTreeSet<Mono> {
    box_monomials(d)
        .into_iter()
        .filter(|m| j.iter().all(|g| in_monomial_ideal(i, &vec![m[0] + g[0], m[1] + g[1]])))
        .collect()
}

fn intersect_oracle(i: &[Mono], j: &[Mono], d: u32) -> BTreeSet<Mono> {
    box_monomials(d).into_iter().filter(|m| in_monomial_ideal(i, m) && in_monomial_ideal(j, m)).collect()
}

fn members(id: &Ideal, d: u32) -> BTreeSet<Mono> {
    let r = id.ring();
    box_monomials(d)
        .into_iter()
        .filter(|m| id.contains(&r.monomial(m)))
        .collect()
}

fn to_ideal(r: &Ring, gens: &[Mono]) -> Ideal {
    Ideal::new(r, gens.iter().map(|m| r.monomial(m)).collect())
}

fn monomial_ideal() -> impl Strategy<Value = Vec<Mono>> {
    prop::collection::vec(prop::collection::vec(0u32..4, 2), 1..4)
}

/// Linear-algebra oracle for `dim_k I/mI`: rank of the images of `gens` in `I / mI`, where
/// `mI` is spanned by `x_i * g` and everything is computed inside the finite algebra.
fn minimal_count_oracle(r: &Ring, gens: &[Polynomial]) -> usize {
    let i = Ideal::new(r, gens.to_vec());
    let mut mi = Vec::new();
    for g in gens {
        for v in 0..r.nvars() {
            mi.push(r.mul(&r.var(v), g));
        }
    }
    let mut count = 0;
    let mut span = mi;
    for g in gens {
        let sub = Ideal::new(r, span.clone());
        if !sub.contains(g) {
            count += 1;
            span.push(g.clone());
        }
    }
    let _ = i;
    count
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn colon_matches_monomial_oracle(i in monomial_ideal(), j in monomial_ideal()) {
        let r = ring("QQ[x,y] local");
        let c = colon_ideal(&to_ideal(&r, &i), &to_ideal(&r, &j)).unwrap();
        prop_assert_eq!(members(&c, 8), colon_oracle(&i, &j, 8));
    }

    #[test]
    fn intersect_matches_monomial_oracle(i in monomial_ideal(), j in monomial_ideal()) {
        let r = ring("QQ[x,y] grevlex");
        let c = intersect(&to_ideal(&r, &i), &to_ideal(&r, &j)).unwrap();
        prop_assert_eq!(members(&c, 8), intersect_oracle(&i, &j, 8));
    }

    #[test]
    fn basis_is_certified(gs in prop::collection::vec(prop::collection::vec((0i64..5, 0u32..3, 0u32..3), 1..4), 1..4),
                          local in any::<bool>()) {
        let r = ring(if local { "GF(7)[x,y] local / (x^4, y^4)" } else { "GF(7)[x,y] grevlex" });
        let polys: Vec<Polynomial> = gs.iter().map(|terms| {
            let mut f = r.zero();
            for &(c, a, b) in terms { f = r.add(&f, &r.scale(&r.field().from_i64(c), &r.monomial(&[a, b]))); }
            f
        }).collect();
        let i = Ideal::new(&r, polys.clone());
        for g in &polys { prop_assert!(i.contains(g)); }
        let again = Ideal::new(&r, i.std_basis().to_vec());
        prop_assert_eq!(again.std_basis(), i.std_basis());
        let leads: Vec<_> = i.std_basis().iter().map(|g| g.lead().unwrap().clone()).collect();
        for (c, _) in &leads { prop_assert!(r.field().is_one(c)); }
        for (a, (_, ma)) in leads.iter().enumerate() {
            for (b, (_, mb)) in leads.iter().enumerate() {
                prop_assert!(a == b || !ma.divides(mb));
            }
        }
        let mg = mingens(&i).unwrap_or_default();
        if local {
            prop_assert_eq!(mg.len(), minimal_count_oracle(&r, &polys));
        }
    }
}
