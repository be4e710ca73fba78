use liaison::homcore::{
    annihilator, ext_from_resolution, fingerprint, resolve, trace_and_stability, FreeModuleMap, PresentedModule,
};
use liaison::linkage::sample::{artinian_gorenstein_rings, Sampler};
use liaison::linkage::{
    complexity, complexity_transfer_check, cone_report, eisenbud_operators, ferrand_cone, horizontal_link, link_via,
    mcm_approx, vanishing_verdict, CxClass, TransferRegime, VanishingMode,
};
use liaison::polycore::{parse_poly, parse_ring, FieldSpec, Polynomial, Ring};
use liaison::stdbasis::Ideal;
use liaison::Error;
use proptest::prelude::*;

fn field() -> FieldSpec {
    FieldSpec::prime(32003).unwrap()
}

fn ring(text: &str) -> Ring {
    parse_ring(text, field()).unwrap()
}

fn p(r: &Ring, s: &str) -> Polynomial {
    parse_poly(s, r).unwrap()
}

fn ideal(r: &Ring, gens: &[&str]) -> Ideal {
    Ideal::new(r, gens.iter().map(|g| p(r, g)).collect())
}

fn cyclic(r: &Ring, gens: &[&str]) -> PresentedModule {
    PresentedModule::cyclic(&ideal(r, gens))
}

fn fp(m: &PresentedModule) -> liaison::homcore::Fingerprint {
    fingerprint(m, 4, 6)
}

#[test]
fn horizontal_links_over_a_truncated_line() {
    let b = ring("k[x] local / (x^3)");
    let m = cyclic(&b, &["x"]);
    let n = horizontal_link(&m).unwrap();
    assert_eq!(fp(&n), fp(&cyclic(&b, &["x^2"])));
    assert_eq!(fp(&horizontal_link(&n).unwrap()), fp(&m));
    assert!(matches!(horizontal_link(&PresentedModule::free(&b, 1)), Err(Error::Unstable)));
}

#[test]
fn linking_through_an_ideal() {
    let a = ring("k[x,y] local");
    let d = link_via(&cyclic(&a, &["x"]), &ideal(&a, &["x*y"])).unwrap();
    assert_eq!(fp(&d.n), fp(&cyclic(&a, &["y"])));
    assert_eq!(d.g, 1);

    let b = ring("k[x] local / (x^3)");
    let d = link_via(&cyclic(&b, &["x"]), &Ideal::zero(&b)).unwrap();
    assert_eq!(fp(&d.n), fp(&cyclic(&b, &["x^2"])));
    assert_eq!(d.g, 0);

    assert!(matches!(link_via(&cyclic(&a, &["x"]), &ideal(&a, &["y"])), Err(Error::NotInAnnihilator)));
}

#[test]
fn cone_of_a_principal_link() {
    let a = ring("k[x,y] local");
    let m = cyclic(&a, &["x"]);
    let q = ideal(&a, &["x*y"]);
    let cone = ferrand_cone(&m, &q, 3).unwrap();
    assert_eq!((cone.c.rank(-1), cone.c.rank(0), cone.c.rank(1), cone.c.rank(2)), (1, 2, 1, 0));
    assert!(cone.c.is_complex());
    assert!(cone.cohomology(-1).is_zero());
    assert!(cone.cohomology(0).is_zero());
    assert_eq!(fp(&cone.cohomology(1)), fp(&cyclic(&a, &["y"])));
    let report = cone_report(&cone).unwrap();
    assert!(report.passed(), "{report:?}");

    let approx = mcm_approx(&cone, 8).unwrap();
    assert!(approx.certified());
    let free = PresentedModule::free(&a, 1);
    assert_eq!(fp(&approx.x), fp(&free));
    assert_eq!(fp(&approx.y), fp(&free));
    assert_eq!(fp(&approx.target), fp(&cyclic(&a, &["y"])));
}

#[test]
fn cone_over_an_artinian_base() {
    let b = ring("k[x] local / (x^3)");
    let m = cyclic(&b, &["x"]);
    let cone = ferrand_cone(&m, &Ideal::zero(&b), 4).unwrap();
    let report = cone_report(&cone).unwrap();
    assert!(report.passed(), "{report:?}");
    assert_eq!(report.nonzero, vec![0]);
    let approx = mcm_approx(&cone, 8).unwrap();
    assert!(approx.certified());
    assert_eq!(fp(&approx.target), fp(&cyclic(&b, &["x^2"])));
    assert_eq!(approx.y_betti[1], 0);
}

#[test]
fn complexity_calibration() {
    let b = ring("k[x] local / (x^3)");
    assert_eq!(complexity(&PresentedModule::free(&b, 2), 8).unwrap().class, CxClass::Zero);
    let c1 = complexity(&PresentedModule::residue_field(&b), 8).unwrap();
    assert_eq!(c1.class, CxClass::One);
    assert_eq!(c1.betti.betti, vec![1; 9]);
    let c = ring("k[x,y] local / (x^2, y^2)");
    let c2 = complexity(&PresentedModule::residue_field(&c), 8).unwrap();
    assert_eq!(c2.class, CxClass::Two);
    assert_eq!(c2.betti.betti, (1..=9).collect::<Vec<_>>());
    assert!(complexity(&PresentedModule::residue_field(&c), 5).is_err());
}

#[test]
fn operators_on_residue_fields() {
    let b = ring("k[x] local / (x^3)");
    let ops = eisenbud_operators(&PresentedModule::residue_field(&b), 6).unwrap();
    assert!(ops.identity_holds && ops.chain_maps);
    assert_eq!(ops.ops.len(), 1);
    assert!(ops.iso.iter().all(|&i| i));
    assert_eq!(ops.periodic_from(), Some(0));
    for t in &ops.ops[0] {
        assert_eq!(t.entry(0, 0), b.one());
    }

    let free = eisenbud_operators(&PresentedModule::free(&b, 2), 4).unwrap();
    assert!(free.ops[0].iter().all(|t| t.is_zero()));

    let c = ring("k[x,y] local / (x^2, y^2)");
    let ops = eisenbud_operators(&PresentedModule::residue_field(&c), 6).unwrap();
    assert_eq!(ops.ops.len(), 2);
    assert!(ops.identity_holds && ops.chain_maps);
    for (k, t) in ops.ops[0].iter().enumerate() {
        assert_eq!((t.rows(), t.cols()), (k + 1, k + 3));
    }
}

#[test]
fn window_verdicts() {
    let b = ring("k[x] local / (x^3)");
    let free = PresentedModule::free(&b, 1);
    let m = cyclic(&b, &["x"]);
    let n = cyclic(&b, &["x^2"]);
    for mode in [VanishingMode::ExtFrom, VanishingMode::ExtInto, VanishingMode::Tor] {
        let (first, second) = if mode == VanishingMode::ExtInto { (&m, &free) } else { (&free, &m) };
        let v = vanishing_verdict(first, second, mode, (1, 6)).unwrap();
        assert!(v.vanishes_on_window, "{mode:?}");
    }
    let k = PresentedModule::residue_field(&b);
    let tor = vanishing_verdict(&k, &n, VanishingMode::Tor, (2, 8)).unwrap();
    let ext = vanishing_verdict(&k, &m, VanishingMode::ExtFrom, (2, 8)).unwrap();
    assert!(!tor.vanishes_on_window && !ext.vanishes_on_window);
    assert!(tor.periodic_upgrade && ext.periodic_upgrade);
    assert_eq!(tor.nonzero, (2..=8).collect::<Vec<_>>());
}

#[test]
fn complexity_transfer_for_the_zero_ideal() {
    let b = ring("k[x] local / (x^3)");
    let d = link_via(&cyclic(&b, &["x"]), &Ideal::zero(&b)).unwrap();
    let r = complexity_transfer_check(&d, 8).unwrap();
    assert_eq!(r.regime, TransferRegime::Perfect);
    assert_eq!((r.m.class, r.n.class), (CxClass::One, CxClass::One));
    assert_eq!(r.matches, Some(true));
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 20, ..ProptestConfig::default() })]

    #[test]
    fn cone_cohomology_is_the_link(seed in any::<u64>()) {
        let rings = artinian_gorenstein_rings(field());
        let mut s = Sampler::new(seed);
        let (_, q, m) = s.linked_instance(&rings, false);
        let cone = ferrand_cone(&m, &q, 4).unwrap();
        let report = cone_report(&cone).unwrap();
        prop_assert!(report.passed(), "{:?} q={:?} m={:?}", report, q.gens(), m);
        let approx = mcm_approx(&cone, 8).unwrap();
        prop_assert!(approx.certified());
    }

    #[test]
    fn links_are_symmetric_and_annihilated(seed in any::<u64>()) {
        let rings = artinian_gorenstein_rings(field());
        let mut s = Sampler::new(seed);
        let (_, q, m) = s.linked_instance(&rings, false);
        let d = link_via(&m, &q).unwrap();
        let ann = annihilator(&d.n);
        prop_assert!(q.gens().iter().all(|g| ann.contains(g)));
        prop_assert!(trace_and_stability(&d.n_over_b).unwrap().stable);
        let back = link_via(&d.n, &q).unwrap();
        prop_assert_eq!(fp(&back.n), fp(&d.m));
    }

    #[test]
    fn eisenbud_identity_holds(seed in any::<u64>()) {
        let rings = artinian_gorenstein_rings(field());
        let mut s = Sampler::new(seed);
        let r = s.pick(&rings).clone();
        let m = s.module(&r, 2, 3);
        let ops = eisenbud_operators(&m, 5).unwrap();
        prop_assert!(ops.identity_holds);
        prop_assert!(ops.chain_maps);
        if r.quotient().len() == 1 && !ops.resolution.finished {
            prop_assert!(ops.periodic_from().is_some_and(|k| k <= 2), "{:?}", ops.iso);
        }
    }

    #[test]
    fn linked_verdicts_agree(seed in any::<u64>()) {
        let rings = artinian_gorenstein_rings(field());
        let mut s = Sampler::new(seed);
        let (a, _, m) = s.linked_instance(&rings, true);
        let d = link_via(&m, &Ideal::zero(&a)).unwrap();
        let l = s.module(&a, 2, 2);
        let ext = vanishing_verdict(&l, &d.m, VanishingMode::ExtFrom, (2, 6)).unwrap();
        let tor = vanishing_verdict(&l, &d.n, VanishingMode::Tor, (2, 6)).unwrap();
        prop_assert_eq!(ext.vanishes_on_window, tor.vanishes_on_window);
        let mm = vanishing_verdict(&d.m, &d.m, VanishingMode::ExtFrom, (2, 6)).unwrap();
        let nn = vanishing_verdict(&d.n, &d.n, VanishingMode::ExtFrom, (2, 6)).unwrap();
        prop_assert_eq!(mm.vanishes_on_window, nn.vanishes_on_window);
        if a.quotient().len() == 1 {
            prop_assert!(ext.periodic_upgrade && tor.periodic_upgrade);
        }
    }

    #[test]
    fn gorenstein_links_preserve_complexity(seed in any::<u64>()) {
        let rings = artinian_gorenstein_rings(field());
        let mut s = Sampler::new(seed);
        let (a, q, m) = s.linked_instance(&rings, true);
        let d = link_via(&m, &q).unwrap();
        let r = complexity_transfer_check(&d, 7).unwrap();
        prop_assert_eq!(r.regime, TransferRegime::Perfect);
        prop_assert_eq!(r.matches, Some(true), "{} {:?} {:?}", a, r.m, r.n);
    }
}

#[test]
fn mcm_part_has_no_higher_ext() {
    let a = ring("k[x,y] local");
    let m = PresentedModule::coker(
        FreeModuleMap::from_rows(&a, 1, 2, &[vec![p(&a, "x^2"), p(&a, "x*y")]]).unwrap(),
    );
    // A/(x^2, xy) is not Cohen-Macaulay, so the cone is refused.
    assert!(matches!(ferrand_cone(&m, &ideal(&a, &["x^2", "x*y"]), 3), Err(Error::NotCohenMacaulay(_))));
    let res = resolve(&PresentedModule::free(&a, 1), 3);
    assert!(ext_from_resolution(&res, &m, 1).is_zero());
}
