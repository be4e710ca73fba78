//! Seeded property harnesses over small Artinian Gorenstein rings.
//!
//! Each case draws its own sampler from `seed + index`, so a single case can be rerun alone.

use serde_json::json;

use liaison::homcore::{artinian_dual, ext_range, tor_range, PresentedModule};
use liaison::linkage::sample::{artinian_gorenstein_rings, Sampler};
use liaison::linkage::{
    complexity, cone_report, eisenbud_operators, ferrand_cone, link_via, mcm_approx, vanishing_verdict, CxClass,
    VanishingMode,
};
use liaison::polycore::{parse_ring, Ring};
use liaison::stdbasis::Ideal;
use liaison::Result;

use crate::interp::Flags;
use crate::output::{self, Check, OutputRecord};

/// Number of sampled instances per harness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Counts {
    pub cones: usize,
    pub verdicts: usize,
    pub duality: usize,
    pub operators: usize,
}

impl Default for Counts {
    fn default() -> Self {
        Counts { cones: 20, verdicts: 50, duality: 50, operators: 20 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Section {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl Section {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HarnessReport {
    pub sections: Vec<Section>,
    pub records: Vec<OutputRecord>,
}

impl HarnessReport {
    pub fn section(&self, name: &str) -> Option<&Section> {
        self.sections.iter().find(|s| s.name == name)
    }

    pub fn passed(&self) -> bool {
        self.sections.iter().all(|s| s.passed())
    }
}

struct Recorder<'a> {
    flags: &'a Flags,
    records: Vec<OutputRecord>,
}

impl Recorder<'_> {
    fn push(&mut self, body: output::Body, ring: &Ring, expr: String, pass: bool) {
        self.records.push(OutputRecord {
            kind: body.kind.to_string(),
            payload: body.payload,
            text: body.text,
            provenance: self.flags.provenance(Some(ring)),
            check: Some(Check { expr, pass }),
        });
    }
}

fn section(name: &'static str, cases: usize, failures: Vec<String>) -> Section {
    Section { name, cases, failures }
}

/// Cone concentration and MCM certification: the fixed `k[x,y]` instance, then sampled ones.
fn cones(r: &mut Recorder, seed: u64, n: usize, field: liaison::polycore::FieldSpec) -> Result<(Section, Section)> {
    let mut cases: Vec<(String, Ring, Ideal, PresentedModule)> = Vec::new();
    let a = parse_ring("k[x,y] local", field)?;
    let x = Ideal::new(&a, vec![a.var(0)]);
    let xy = Ideal::new(&a, vec![a.mul(&a.var(0), &a.var(1))]);
    cases.push(("k[x,y], M = A/(x), q = (xy)".into(), a.clone(), xy, PresentedModule::cyclic(&x)));
    let rings = artinian_gorenstein_rings(field);
    for k in 0..n {
        let mut s = Sampler::new(seed.wrapping_add(k as u64));
        let (ring, q, m) = s.linked_instance(&rings, false);
        cases.push((format!("sample {k} over {ring}"), ring, q, m));
    }
    let (mut conc, mut mcm) = (Vec::new(), Vec::new());
    for (desc, ring, q, m) in &cases {
        let cone = ferrand_cone(m, q, 4)?;
        let report = cone_report(&cone)?;
        let ranks: Vec<usize> = (-1..=cone.c.hi()).map(|i| cone.c.rank(i)).collect();
        if !report.passed() {
            conc.push(desc.clone());
        }
        r.push(output::cone_body(&report, &ranks), ring, format!("cone concentrated, {desc}"), report.passed());
        let approx = mcm_approx(&cone, 8)?;
        if !approx.certified() {
            mcm.push(desc.clone());
        }
        let body = output::Body {
            kind: "mcm-approx",
            payload: json!({
                "y_betti": approx.y_betti,
                "y_finite": approx.y_finite,
                "x_mcm": approx.x_mcm,
                "ext_bound": approx.ext_bound,
                "exact": approx.exact,
            }),
            text: format!("Y betti {:?}; X has no Ext into A up to 8: {}", approx.y_betti, approx.x_mcm),
        };
        r.push(body, ring, format!("MCM approximation certified, {desc}"), approx.certified());
    }
    Ok((section("cone", cases.len(), conc), section("mcm", cases.len(), mcm)))
}

/// Window verdicts for linked pairs `M ~ N` through the zero ideal: `Ext(L, M)` against
/// `Tor(L, N)` and `Ext(M, M)` against `Ext(N, N)`.
fn verdicts(r: &mut Recorder, seed: u64, n: usize, window: (usize, usize), field: liaison::polycore::FieldSpec) -> Result<Section> {
    let rings = artinian_gorenstein_rings(field);
    let mut failures = Vec::new();
    for k in 0..n {
        let mut s = Sampler::new(seed.wrapping_add(1000 + k as u64));
        let (a, _, m) = s.linked_instance(&rings, true);
        let d = link_via(&m, &Ideal::zero(&a))?;
        let l = s.module(&a, 2, 2);
        let ext = vanishing_verdict(&l, &d.m, VanishingMode::ExtFrom, window)?;
        let tor = vanishing_verdict(&l, &d.n, VanishingMode::Tor, window)?;
        let mm = vanishing_verdict(&d.m, &d.m, VanishingMode::ExtFrom, window)?;
        let nn = vanishing_verdict(&d.n, &d.n, VanishingMode::ExtFrom, window)?;
        let hyper = a.quotient().len() == 1;
        let upgrade_ok = !hyper || [&ext, &tor, &mm, &nn].iter().all(|v| v.periodic_upgrade);
        let pass = ext.vanishes_on_window == tor.vanishes_on_window
            && mm.vanishes_on_window == nn.vanishes_on_window
            && upgrade_ok;
        if !pass {
            failures.push(format!("sample {k} over {a}"));
        }
        let v = |x: &liaison::linkage::VanishingVerdict| output::verdict_body(x).payload;
        let body = output::Body {
            kind: "verdict",
            payload: json!({
                "ext_l_m": v(&ext),
                "tor_l_n": v(&tor),
                "ext_m_m": v(&mm),
                "ext_n_n": v(&nn),
                "hypersurface": hyper,
                "label": liaison::linkage::VanishingVerdict::LABEL,
            }),
            text: format!(
                "Ext(L,M) vanishes {} / Tor(L,N) vanishes {}; Ext(M,M) vanishes {} / Ext(N,N) vanishes {}; {}",
                ext.vanishes_on_window,
                tor.vanishes_on_window,
                mm.vanishes_on_window,
                nn.vanishes_on_window,
                liaison::linkage::VanishingVerdict::LABEL
            ),
        };
        r.push(body, &a, format!("linked verdicts agree, sample {k}"), pass);
    }
    Ok(section("verdict", n, failures))
}

/// `ℓ Ext^i(M, L) = ℓ Tor_i(M, L^∨)` for `0 <= i <= top`.
fn duality(r: &mut Recorder, seed: u64, n: usize, top: usize, field: liaison::polycore::FieldSpec) -> Result<Section> {
    let rings = artinian_gorenstein_rings(field);
    let mut failures = Vec::new();
    for k in 0..n {
        let mut s = Sampler::new(seed.wrapping_add(2000 + k as u64));
        let a = s.pick(&rings).clone();
        let m = s.module(&a, 2, 3);
        let l = s.module(&a, 2, 3);
        let dual = artinian_dual(&l)?;
        let mut exts = Vec::new();
        for e in ext_range(&m, &l, top)? {
            exts.push(e.length()?);
        }
        let mut tors = Vec::new();
        for t in tor_range(&m, &dual, top)? {
            tors.push(t.length()?);
        }
        let pass = exts == tors;
        if !pass {
            failures.push(format!("sample {k} over {a}"));
        }
        let body = output::value_body(
            json!({ "ext_lengths": exts, "tor_lengths": tors }),
            format!("l Ext^i(M, L) = {exts:?}\nl Tor_i(M, L^v) = {tors:?}"),
        );
        r.push(body, &a, format!("Ext and Tor lengths agree, sample {k}"), pass);
    }
    Ok(section("duality", n, failures))
}

/// Complexity of a free module, of `k` over `k[x]/(x^3)`, and of `k` over `k[x,y]/(x^2,y^2)`.
fn calibration(r: &mut Recorder, bound: usize, field: liaison::polycore::FieldSpec) -> Result<Section> {
    let line = parse_ring("k[x] local / (x^3)", field)?;
    let plane = parse_ring("k[x,y] local / (x^2, y^2)", field)?;
    let cases = [
        ("free module over k[x]/(x^3)", PresentedModule::free(&line, 1), CxClass::Zero, None),
        ("k over k[x]/(x^3)", PresentedModule::residue_field(&line), CxClass::One, Some(vec![1; bound + 1])),
        (
            "k over k[x,y]/(x^2,y^2)",
            PresentedModule::residue_field(&plane),
            CxClass::Two,
            Some((1..=bound + 1).collect::<Vec<_>>()),
        ),
    ];
    let mut failures = Vec::new();
    for (desc, m, class, betti) in cases {
        let c = complexity(&m, bound)?;
        let pass = c.class == class && betti.as_ref().is_none_or(|b| *b == c.betti.betti);
        if !pass {
            failures.push(desc.to_string());
        }
        let ring = m.ring().clone();
        r.push(output::complexity_body(&c), &ring, format!("cx class {class}, {desc}"), pass);
    }
    Ok(section("calibration", 3, failures))
}

/// Eisenbud operators for sampled modules over `k[x]/(x^3)` and `k[x,y]/(x^2,y^2)`.
fn operators(r: &mut Recorder, seed: u64, n: usize, field: liaison::polycore::FieldSpec) -> Result<Section> {
    let rings = [parse_ring("k[x] local / (x^3)", field)?, parse_ring("k[x,y] local / (x^2, y^2)", field)?];
    let mut failures = Vec::new();
    for k in 0..n {
        let mut s = Sampler::new(seed.wrapping_add(3000 + k as u64));
        let a = rings[k % 2].clone();
        let m = s.module(&a, 2, 3);
        let ops = eisenbud_operators(&m, 6)?;
        let hyper = a.quotient().len() == 1;
        let periodic = ops.periodic_from();
        let periodic_ok = !hyper || ops.resolution.finished || periodic.is_some_and(|i| i <= 2);
        let pass = ops.identity_holds && ops.chain_maps && periodic_ok;
        if !pass {
            failures.push(format!("sample {k} over {a}"));
        }
        let body = output::Body {
            kind: "operators",
            payload: json!({
                "betti": ops.resolution.betti.betti,
                "identity_holds": ops.identity_holds,
                "chain_maps": ops.chain_maps,
                "iso": ops.iso,
                "periodic_from": periodic,
            }),
            text: format!(
                "betti {:?}; identity {}; chain maps {}; periodic from {:?}",
                ops.resolution.betti.betti, ops.identity_holds, ops.chain_maps, periodic
            ),
        };
        r.push(body, &a, format!("Eisenbud identity, sample {k}"), pass);
    }
    Ok(section("operators", n, failures))
}

/// Runs every harness. The window for verdicts is `[2, flags.bound]`.
pub fn run_harness(flags: &Flags, counts: Counts) -> Result<HarnessReport> {
    let field = flags.field()?;
    let seed = flags.seed.unwrap_or(0);
    let flags = Flags { seed: Some(seed), ..flags.clone() };
    let mut r = Recorder { flags: &flags, records: Vec::new() };
    let (cone, mcm) = cones(&mut r, seed, counts.cones, field)?;
    let verdict = verdicts(&mut r, seed, counts.verdicts, (2, flags.bound), field)?;
    let dual = duality(&mut r, seed, counts.duality, 6, field)?;
    let calib = calibration(&mut r, flags.bound, field)?;
    let ops = operators(&mut r, seed, counts.operators, field)?;
    Ok(HarnessReport { sections: vec![cone, mcm, verdict, dual, calib, ops], records: r.records })
}
