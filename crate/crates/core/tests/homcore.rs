use liaison::homcore::{
    annihilator, artinian_dual, betti, codim_profile, dagger, ext, ext_range, fingerprint, hom_modules,
    minimize_complex, resolve, syzygy_map, syzygy_module, tensor, tor, tor_range, trace_and_stability, transpose,
    FreeComplex, FreeModuleMap, PresentedModule,
};
use liaison::linkage::sample::{artinian_gorenstein_rings, Sampler};
use liaison::polycore::{parse_poly, parse_ring, FieldSpec, Polynomial, Ring};
use liaison::stdbasis::{Ideal, Vector};
use liaison::Error;
use proptest::prelude::*;

fn ring(text: &str) -> Ring {
    parse_ring(text, FieldSpec::prime(32003).unwrap()).unwrap()
}

fn p(r: &Ring, s: &str) -> Polynomial {
    parse_poly(s, r).unwrap()
}

fn mat(r: &Ring, rows: usize, cols: usize, entries: &[&str]) -> FreeModuleMap {
    let e: Vec<Vec<Polynomial>> = (0..rows).map(|i| (0..cols).map(|j| p(r, entries[i * cols + j])).collect()).collect();
    FreeModuleMap::from_rows(r, rows, cols, &e).unwrap()
}

fn cyclic(r: &Ring, gens: &[&str]) -> PresentedModule {
    PresentedModule::cyclic(&Ideal::new(r, gens.iter().map(|g| p(r, g)).collect()))
}

fn fp(m: &PresentedModule) -> liaison::homcore::Fingerprint {
    fingerprint(m, 4, 6)
}

fn len(m: &PresentedModule) -> usize {
    m.length().unwrap()
}

#[test]
fn syzygies_of_small_maps() {
    let r = ring("QQ[x] local");
    assert_eq!(syzygy_map(&FreeModuleMap::identity(&r, 1)).cols(), 0);

    let r = ring("QQ[x,y] local");
    let f = mat(&r, 1, 2, &["x", "y"]);
    let s = syzygy_map(&f);
    assert_eq!(s.cols(), 1);
    assert!(f.compose(&s).unwrap().is_zero());
    // The Koszul relation generates.
    let koszul = Vector::from_entries(&[p(&r, "y"), p(&r, "-x")], &liaison::stdbasis::module::vector_order(&r));
    let sub = PresentedModule::new(s.clone());
    assert!(sub.represents_zero(&koszul));
    let e = s.column_entries(0);
    assert_eq!(e[0].lead_monomial().unwrap().exponents(), &[0, 1]);

    let r = ring("QQ[x] local / (x^3)");
    let s = syzygy_map(&mat(&r, 1, 1, &["x"]));
    assert_eq!(s.cols(), 1);
    assert_eq!(s.entry(0, 0).lead_monomial().unwrap().exponents(), &[2]);
}

#[test]
fn resolution_examples() {
    let a = ring("k[x,y] local");
    let free = resolve(&PresentedModule::free(&a, 3), 4);
    assert!(free.finished);
    assert_eq!(free.betti.betti, vec![3, 0, 0, 0, 0]);

    let b = ring("k[x] local / (x^3)");
    let res = resolve(&cyclic(&b, &["x"]), 6);
    assert_eq!(res.betti.betti, vec![1; 7]);
    assert!(res.complex.is_complex());
    assert!(res.complex.is_minimal());
    for i in 1..=6 {
        let d = res.d(i).entry(0, 0);
        let want = if i % 2 == 1 { 1 } else { 2 };
        assert_eq!(d.min_degree(), Some(want), "d_{i}");
    }

    let c = ring("k[x,y] local / (x^2, y^2)");
    let k = PresentedModule::residue_field(&c);
    let res = resolve(&k, 6);
    assert_eq!(res.betti.betti, (1..=7).collect::<Vec<_>>());
    assert!(res.complex.is_complex());
}

#[test]
fn minimizing_complexes() {
    let r = ring("QQ[x,y] local");
    let minimal = resolve(&cyclic(&r, &["x", "y"]), 3).complex;
    let m = minimize_complex(&minimal).unwrap();
    assert_eq!(m.ranks, minimal.ranks);

    let d = mat(&r, 2, 2, &["1", "0", "0", "x"]);
    let c = FreeComplex { ring: r.clone(), lo: 0, ranks: vec![2, 2], maps: vec![d], cohomological: false };
    let m = minimize_complex(&c).unwrap();
    assert_eq!(m.ranks, vec![1, 1]);
    assert_eq!(m.maps[0].entry(0, 0).lead_monomial().unwrap().exponents(), &[1, 0]);

    let mixed = mat(&r, 2, 2, &["3", "y", "x*y", "x^2"]);
    let c = FreeComplex { ring: r.clone(), lo: 0, ranks: vec![2, 2], maps: vec![mixed], cohomological: false };
    let m = minimize_complex(&c).unwrap();
    assert_eq!(m.ranks, vec![1, 1]);
    assert!(m.is_minimal());

    let unit = mat(&r, 1, 1, &["1"]);
    let c = FreeComplex { ring: r.clone(), lo: 0, ranks: vec![1, 1], maps: vec![unit], cohomological: false };
    assert_eq!(minimize_complex(&c).unwrap().ranks, vec![0, 0]);
}

#[test]
fn minimizing_cancels_a_hidden_trivial_summand() {
    let r = ring("k[x,y] local / (x^2, y^2)");
    let res = resolve(&PresentedModule::residue_field(&r), 3);
    let (d1, d2, d3) = (res.d(1), res.d(2), res.d(3));
    // Add A --(1+y)--> A in degrees 2 -> 1, then change the basis of F_1 ⊕ A by
    // E = I + x e_{0,last}.
    let u = FreeModuleMap::from_rows(&r, 1, 1, &[vec![p(&r, "1+y")]]).unwrap();
    let n1 = d1.cols() + 1;
    let mut e = FreeModuleMap::identity(&r, n1).to_rows();
    e[0][n1 - 1] = p(&r, "x");
    let mut einv = FreeModuleMap::identity(&r, n1).to_rows();
    einv[0][n1 - 1] = p(&r, "-x");
    let e = FreeModuleMap::from_rows(&r, n1, n1, &e).unwrap();
    let einv = FreeModuleMap::from_rows(&r, n1, n1, &einv).unwrap();
    let d1p = d1.hstack(&FreeModuleMap::zero(&r, 1, 1)).unwrap().compose(&einv).unwrap();
    let d2p = e.compose(&d2.direct_sum(&u)).unwrap();
    let d3p = FreeModuleMap::from_columns(&r, d3.rows() + 1, d3.columns().to_vec());
    let c = FreeComplex {
        ring: r.clone(),
        lo: 0,
        ranks: vec![1, n1, d2.cols() + 1, d3.cols()],
        maps: vec![d1p, d2p, d3p],
        cohomological: false,
    };
    assert!(c.is_complex());
    assert!(!c.is_minimal());
    let m = minimize_complex(&c).unwrap();
    assert!(m.is_complex());
    assert!(m.is_minimal());
    assert_eq!(m.ranks, vec![1, 2, 3, 4]);
}

#[test]
fn transposes() {
    let b = ring("k[x] local / (x^3)");
    assert!(transpose(&PresentedModule::free(&b, 2)).is_zero());
    let m = cyclic(&b, &["x"]);
    assert_eq!(fp(&transpose(&m)), fp(&m));
    let a = ring("k[x,y] local");
    let m = cyclic(&a, &["x*y"]);
    assert_eq!(fp(&transpose(&m)), fp(&m));
}

#[test]
fn first_syzygies() {
    let b = ring("k[x] local / (x^3)");
    assert!(syzygy_module(&PresentedModule::free(&b, 1)).is_zero());
    assert_eq!(fp(&syzygy_module(&cyclic(&b, &["x"]))), fp(&cyclic(&b, &["x^2"])));
}

#[test]
fn hom_and_tensor() {
    let b = ring("k[x] local / (x^3)");
    let n = cyclic(&b, &["x^2"]);
    assert_eq!(fp(&hom_modules(&PresentedModule::free(&b, 1), &n).unwrap()), fp(&n));
    let h = hom_modules(&cyclic(&b, &["x"]), &PresentedModule::free(&b, 1)).unwrap();
    assert_eq!(len(&h), 1);
    assert!(hom_modules(&n, &PresentedModule::zero(&b)).unwrap().is_zero());

    let a = ring("k[x,y] local / (x^3, y^2)");
    let n = cyclic(&a, &["x*y", "x^2"]);
    assert_eq!(fp(&tensor(&PresentedModule::free(&a, 1), &n).unwrap()), fp(&n));
    let t = tensor(&cyclic(&a, &["x^2"]), &cyclic(&a, &["y", "x*y"])).unwrap();
    assert_eq!(fp(&t), fp(&cyclic(&a, &["x^2", "y"])));
    let m = PresentedModule::coker(mat(&a, 2, 2, &["x", "y", "0", "x^2"]));
    let k = PresentedModule::residue_field(&a);
    assert_eq!(len(&tensor(&k, &m).unwrap()), m.num_gens());
}

#[test]
fn ext_and_tor_over_a_self_injective_ring() {
    let b = ring("k[x] local / (x^3)");
    let a1 = PresentedModule::free(&b, 1);
    let m = cyclic(&b, &["x"]);
    for i in 1..=3 {
        assert!(ext(&a1, &m, i).unwrap().is_zero());
        assert!(tor(&a1, &m, i).unwrap().is_zero());
    }
    for (i, (e, t)) in ext_range(&m, &m, 6).unwrap().iter().zip(tor_range(&m, &m, 6).unwrap()).enumerate() {
        assert_eq!(len(e), 1, "Ext^{i}");
        assert_eq!(len(&t), 1, "Tor_{i}");
    }
    let into = ext_range(&m, &a1, 6).unwrap();
    assert!(into[1..].iter().all(|e| e.is_zero()));
}

#[test]
fn dagger_and_codimension() {
    let a = ring("k[x,y] local");
    let m = cyclic(&a, &["x"]);
    let prof = codim_profile(&m, None).unwrap();
    assert_eq!((prof.g, prof.is_cm), (1, true));
    assert_eq!(fp(&dagger(&m).unwrap()), fp(&m));
    let f = PresentedModule::free(&a, 2);
    assert_eq!(codim_profile(&f, None).unwrap().g, 0);
    assert_eq!(fp(&dagger(&f).unwrap()), fp(&f));

    let b = ring("k[x] local / (x^3)");
    let prof = codim_profile(&PresentedModule::residue_field(&b), None).unwrap();
    assert_eq!((prof.g, prof.is_cm), (0, true));

    // k over k[x,y] has Ext into the ring only in degree 2; A/(x^2, xy) is not CM.
    let bad = cyclic(&a, &["x^2", "x*y"]);
    assert!(matches!(dagger(&bad), Err(Error::NotCohenMacaulay(_))));
}

#[test]
fn annihilators() {
    let a = ring("k[x,y] local / (x^3, y^2)");
    let i = Ideal::new(&a, vec![p(&a, "x^2"), p(&a, "x*y")]);
    let ann = annihilator(&PresentedModule::cyclic(&i));
    assert!(ann.is_subset_of(&i) && i.is_subset_of(&ann));
    assert!(annihilator(&PresentedModule::free(&a, 2)).is_zero());
    let m = Ideal::maximal(&a);
    let ann = annihilator(&PresentedModule::residue_field(&a));
    assert!(ann.is_subset_of(&m) && m.is_subset_of(&ann));
    // ann of B/(x) + B/(y) is (x) ∩ (y).
    let sum = cyclic(&a, &["x"]).direct_sum(&cyclic(&a, &["y"])).unwrap();
    let ann = annihilator(&sum);
    assert!(ann.contains(&p(&a, "x*y")) && !ann.contains(&p(&a, "x")) && !ann.contains(&p(&a, "y")));
}

#[test]
fn traces_and_stability() {
    let b = ring("k[x] local / (x^3)");
    let t = trace_and_stability(&PresentedModule::free(&b, 1)).unwrap();
    assert!(t.trace.is_unit() && !t.stable);
    assert!(trace_and_stability(&PresentedModule::residue_field(&b)).unwrap().stable);
    assert!(trace_and_stability(&cyclic(&b, &["x"])).unwrap().stable);
    let c = ring("k[x,y] local / (x^2, y^2)");
    assert!(trace_and_stability(&PresentedModule::residue_field(&c)).unwrap().stable);
    let with_free = cyclic(&b, &["x"]).direct_sum(&PresentedModule::free(&b, 1)).unwrap();
    assert!(!trace_and_stability(&with_free).unwrap().stable);
}

#[test]
fn fingerprints_separate() {
    let b = ring("k[x] local / (x^3)");
    let m = cyclic(&b, &["x"]);
    assert_eq!(fp(&m), fp(&m.clone()));
    let m2 = cyclic(&b, &["x^2"]);
    assert_ne!(fp(&m), fp(&m2));
    assert_eq!(fp(&m).filtration[1], 1);
    assert_eq!(fp(&m2).filtration[1], 2);
    let plus = m.direct_sum(&PresentedModule::free(&b, 1)).unwrap();
    assert_ne!(fp(&plus).betti[0], fp(&m).betti[0]);
}

#[test]
fn artinian_duals() {
    let b = ring("k[x] local / (x^3)");
    let one = PresentedModule::free(&b, 1);
    assert_eq!(fp(&artinian_dual(&one).unwrap()), fp(&one));
    let m = cyclic(&b, &["x"]);
    let d = artinian_dual(&m).unwrap();
    assert_eq!(fp(&d), fp(&m));
    assert_eq!(len(&d), 1);
    let c = ring("k[x,y] local / (x^2, x*y, y^2)");
    assert!(matches!(artinian_dual(&PresentedModule::free(&c, 1)), Err(Error::NotArtinianGorenstein)));
    let a = ring("k[x,y] local");
    assert!(artinian_dual(&PresentedModule::free(&a, 1)).is_err());
}

fn sample(seed: u64) -> (Ring, PresentedModule) {
    let rings = artinian_gorenstein_rings(FieldSpec::prime(32003).unwrap());
    let mut s = Sampler::new(seed);
    let r = s.pick(&rings).clone();
    let m = s.module(&r, 2, 2);
    (r, m)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn resolutions_are_minimal_exact_complexes(seed in any::<u64>()) {
        let (r, m) = sample(seed);
        let res = resolve(&m, 4);
        prop_assert!(res.complex.is_complex());
        prop_assert!(res.complex.is_minimal());
        let la = PresentedModule::free(&r, 1).length().unwrap();
        // Exactness at F_{i-1}: ℓ(coker d_{i+1}) + ℓ(coker d_i) = β_{i-1} ℓ(A).
        let cok = |i: usize| if i == 1 { len(&m.minimize()) } else { len(&PresentedModule::new(res.d(i))) };
        for i in 2..=4 {
            if res.rank(i - 1) == 0 { break; }
            prop_assert_eq!(cok(i) + cok(i - 1), res.rank(i - 2) * la, "at F_{}", i - 1);
        }
    }

    #[test]
    fn betti_numbers_are_tor_lengths(seed in any::<u64>()) {
        let (r, m) = sample(seed);
        let k = PresentedModule::residue_field(&r);
        let b = betti(&m, 4);
        for (i, t) in tor_range(&m, &k, 4).unwrap().iter().enumerate() {
            prop_assert_eq!(b.get(i), len(t));
        }
    }

    #[test]
    fn syzygy_shifts_betti(seed in any::<u64>()) {
        let (_, m) = sample(seed);
        let b = betti(&m, 4);
        let s = betti(&syzygy_module(&m), 3);
        for i in 0..=3 {
            prop_assert_eq!(s.get(i), b.get(i + 1));
        }
    }

    #[test]
    fn ext_lengths_match_tor_with_the_dual(seed in any::<u64>()) {
        let rings = artinian_gorenstein_rings(FieldSpec::prime(32003).unwrap());
        let mut s = Sampler::new(seed);
        let r = s.pick(&rings).clone();
        let m = s.module(&r, 2, 2);
        let l = s.module(&r, 2, 2);
        let dual = artinian_dual(&l).unwrap();
        let e = ext_range(&m, &l, 4).unwrap();
        let t = tor_range(&m, &dual, 4).unwrap();
        for i in 0..=4 {
            prop_assert_eq!(len(&e[i]), len(&t[i]), "degree {}", i);
        }
        prop_assert_eq!(len(&dual), len(&l));
    }

    #[test]
    fn ext_into_the_ring_is_concentrated(seed in any::<u64>()) {
        let (_, m) = sample(seed);
        prop_assume!(!m.is_zero());
        let prof = codim_profile(&m, Some(4)).unwrap();
        prop_assert_eq!(prof.nonzero, vec![0]);
    }

    #[test]
    fn double_transpose_of_stable_modules(seed in any::<u64>()) {
        let (_, m) = sample(seed);
        prop_assume!(!m.is_zero() && trace_and_stability(&m).unwrap().stable);
        prop_assert_eq!(fp(&transpose(&transpose(&m))), fp(&m));
    }

    #[test]
    fn dagger_is_an_involution(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let (r, m) = if s.below(2) == 0 {
            let a = ring("k[x,y] local");
            let f = s.nonzero_non_unit(&a, 2);
            (a.clone(), PresentedModule::cyclic(&Ideal::new(&a, vec![f])))
        } else {
            let (r, m) = sample(seed);
            (r, m)
        };
        prop_assume!(!m.is_zero());
        let _ = r;
        let d = dagger(&m).unwrap();
        prop_assert_eq!(fp(&dagger(&d).unwrap()), fp(&m));
    }

    #[test]
    fn hom_into_the_ring_is_an_annihilator(seed in any::<u64>()) {
        let rings = artinian_gorenstein_rings(FieldSpec::prime(32003).unwrap());
        let mut s = Sampler::new(seed);
        let r = s.pick(&rings).clone();
        let a = s.nonzero_non_unit(&r, 2);
        let h = hom_modules(&PresentedModule::cyclic(&Ideal::new(&r, vec![a.clone()])), &PresentedModule::free(&r, 1)).unwrap();
        let colon = Ideal::zero(&r).colon_element(&a);
        let total = Ideal::zero(&r).colength().unwrap();
        prop_assert_eq!(len(&h), total - colon.colength().unwrap());
    }
}
