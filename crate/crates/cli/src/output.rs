//! Output records and their text and JSON renderings.

use serde_json::{json, Value};

use liaison::homcore::{BettiTable, Fingerprint, FreeModuleMap, PresentedModule, Resolution};
use liaison::linkage::{ComplexityEstimate, ConeReport, VanishingVerdict};
use liaison::polycore::Ring;
use liaison::stdbasis::Ideal;

pub const FINGERPRINT_NOTE: &str = "equal fingerprints are necessary, not sufficient, for isomorphism";

#[derive(Debug, Clone, PartialEq)]
pub struct Provenance {
    pub characteristic: u32,
    pub order: String,
    pub resolution_bound: usize,
    pub window: (usize, usize),
    pub seed: Option<u64>,
}

impl Provenance {
    pub fn to_json(&self) -> Value {
        json!({
            "characteristic": self.characteristic,
            "order": self.order,
            "bounds": { "resolution": self.resolution_bound, "window": [self.window.0, self.window.1] },
            "seed": self.seed,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub expr: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputRecord {
    pub kind: String,
    pub payload: Value,
    /// Human-readable body for text output.
    pub text: String,
    pub provenance: Provenance,
    pub check: Option<Check>,
}

impl OutputRecord {
    pub fn to_json(&self) -> Value {
        json!({
            "kind": self.kind,
            "payload": self.payload,
            "provenance": self.provenance.to_json(),
            "check": self.check.as_ref().map(|c| json!({ "expr": c.expr, "pass": c.pass })),
        })
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("serializable")
    }

    pub fn render_text(&self) -> String {
        match &self.check {
            Some(c) => {
                let verdict = if c.pass { "PASS" } else { "FAIL" };
                format!("check {}: {verdict}\n{}", c.expr, indent(&self.text))
            }
            None => format!("{}:\n{}", self.kind, indent(&self.text)),
        }
    }
}

fn indent(s: &str) -> String {
    let mut out = String::new();
    for line in s.lines() {
        out.push_str("  ");
        out.push_str(line);
        out.push('\n');
    }
    out
}

pub fn emit(records: &[OutputRecord], json: bool) -> String {
    let mut out = String::new();
    for r in records {
        if json {
            out.push_str(&r.render_json());
            out.push('\n');
        } else {
            out.push_str(&r.render_text());
        }
    }
    out
}

/// A record body: kind, payload and text.
#[derive(Debug, Clone, PartialEq)]
pub struct Body {
    pub kind: &'static str,
    pub payload: Value,
    pub text: String,
}

pub fn matrix_rows(m: &FreeModuleMap) -> Vec<Vec<String>> {
    let ring = m.ring();
    m.to_rows().iter().map(|r| r.iter().map(|e| ring.format(e)).collect()).collect()
}

pub fn ring_body(r: &Ring) -> Body {
    Body { kind: "ring", payload: json!({ "ring": r.to_string() }), text: r.to_string() }
}

pub fn ideal_body(i: &Ideal, gens: &[liaison::polycore::Polynomial]) -> Body {
    let r = i.ring();
    let g: Vec<String> = gens.iter().map(|f| r.format(f)).collect();
    Body {
        kind: "ideal",
        payload: json!({ "ring": r.to_string(), "gens": g, "count": g.len() }),
        text: format!("({})\n{} generators", g.join(", "), g.len()),
    }
}

pub fn module_body(m: &PresentedModule) -> Body {
    let m = m.minimize();
    let rows = matrix_rows(m.presentation());
    let length = m.length().ok();
    let mut text = format!("coker of a {}x{} matrix", m.num_gens(), m.num_relations());
    if let Some(l) = length {
        text.push_str(&format!(", length {l}"));
    }
    text.push('\n');
    text.push_str(&m.presentation().to_string());
    Body {
        kind: "module",
        payload: json!({
            "gens": m.num_gens(),
            "relations": m.num_relations(),
            "presentation": rows,
            "length": length,
        }),
        text,
    }
}

fn betti_line(b: &[usize]) -> String {
    let idx: Vec<String> = (0..b.len()).map(|i| i.to_string()).collect();
    let val: Vec<String> = b.iter().map(|v| v.to_string()).collect();
    let w = idx.iter().chain(&val).map(|s| s.len()).max().unwrap_or(1);
    let pad = |v: &[String]| v.iter().map(|s| format!("{s:>w$}")).collect::<Vec<_>>().join(" ");
    format!("i     {}\nbeta  {}", pad(&idx), pad(&val))
}

pub fn betti_body(b: &BettiTable, finished: Option<bool>) -> Body {
    Body {
        kind: "betti",
        payload: json!({ "betti": b.betti, "bound": b.bound, "finished": finished }),
        text: betti_line(&b.betti),
    }
}

pub fn resolution_body(r: &Resolution) -> Body {
    let maps: Vec<Vec<Vec<String>>> = r.complex.maps.iter().map(matrix_rows).collect();
    let mut text = betti_line(&r.betti.betti);
    for (i, m) in r.complex.maps.iter().enumerate() {
        text.push_str(format!("\nd_{}:\n{}", i + 1, m).trim_end());
    }
    Body {
        kind: "betti",
        payload: json!({
            "betti": r.betti.betti,
            "bound": r.betti.bound,
            "finished": r.finished,
            "differentials": maps,
        }),
        text,
    }
}

pub fn verdict_body(v: &VanishingVerdict) -> Body {
    Body {
        kind: "verdict",
        payload: json!({
            "mode": v.mode.name(),
            "window": [v.window.0, v.window.1],
            "vanishes_on_window": v.vanishes_on_window,
            "nonzero": v.nonzero,
            "periodic_upgrade": v.periodic_upgrade,
            "label": VanishingVerdict::LABEL,
        }),
        text: format!(
            "{} on [{}, {}]: {} (nonzero in {:?}); periodic upgrade {}; {}",
            v.mode.name(),
            v.window.0,
            v.window.1,
            if v.vanishes_on_window { "vanishes" } else { "does not vanish" },
            v.nonzero,
            v.periodic_upgrade,
            VanishingVerdict::LABEL
        ),
    }
}

pub fn fingerprint_body(f: &Fingerprint) -> Body {
    Body {
        kind: "fingerprint",
        payload: json!({
            "betti": f.betti,
            "filtration": f.filtration,
            "ann_leads": f.ann_leads,
            "note": FINGERPRINT_NOTE,
        }),
        text: format!(
            "betti {:?}\nfiltration {:?}\nann leads {:?}\n({FINGERPRINT_NOTE})",
            f.betti, f.filtration, f.ann_leads
        ),
    }
}

pub fn cone_body(r: &ConeReport, ranks: &[usize]) -> Body {
    Body {
        kind: "cone-report",
        payload: json!({
            "g": r.g,
            "lo": -1,
            "ranks": ranks,
            "nonzero_cohomology": r.nonzero,
            "concentrated": r.concentrated,
            "is_complex": r.is_complex,
            "matches_link": r.matches_link,
        }),
        text: format!(
            "g = {}, ranks from degree -1: {:?}\nnonzero cohomology in {:?}; concentrated {}; d^2 = 0 {}; H^g matches the link {}",
            r.g, ranks, r.nonzero, r.concentrated, r.is_complex, r.matches_link
        ),
    }
}

pub fn complexity_body(c: &ComplexityEstimate) -> Body {
    let label = if c.certified { "certified" } else { VanishingVerdict::LABEL };
    Body {
        kind: "complexity",
        payload: json!({
            "betti": c.betti.betti,
            "class": c.class.to_string(),
            "second_differences": c.second_differences,
            "window": [c.window.0, c.window.1],
            "certified": c.certified,
            "label": label,
        }),
        text: format!(
            "{}\ncx class {} ({label}); beta_(i+2) - beta_i = {:?}",
            betti_line(&c.betti.betti),
            c.class,
            c.second_differences
        ),
    }
}

pub fn value_body(v: Value, text: String) -> Body {
    Body { kind: "value", payload: json!({ "value": v }), text }
}
