//! The counterexample pipeline over `k[x,y,z]` modulo `u = x^2 + y^2 + z^2`.
//!
//! The first stage computes `I = (x^7, y^7) : (xy + yz + xz)` in `R = P/(u)`, lifts it to
//! `q = (u) + (preimages of mingens I)` in `P`, and checks the containments
//! `((x^2)^4, (y^2)^4, u) ⊆ (x^7, y^7, u) ⊆ q ⊆ (x^2, y^2, u)`.
//! The deep stage links `M = A/(x, y^2)` over `A = P/(u, x^8)` through `qA` and through a
//! power of `y^2`, and compares the complexities of the two links.

use serde_json::json;

use liaison::homcore::{trace_and_stability, PresentedModule};
use liaison::linkage::{complexity_transfer_check, link_via, ComplexityEstimate, CxClass, TransferReport};
use liaison::polycore::{parse_poly, parse_ring, Polynomial, Ring};
use liaison::stdbasis::Ideal;
use liaison::Result;

use crate::interp::{transfer_body, Flags};
use crate::output::{self, Body, Check, OutputRecord};

/// Bound for the complexity windows of the deep stage.
pub const DEEP_BOUND: usize = 6;

#[derive(Debug, Clone)]
pub struct DeepReport {
    /// Exponent `i` with `M` stable over `A/(y^2)^i`.
    pub ci_power: usize,
    pub n: ComplexityEstimate,
    pub l: ComplexityEstimate,
    pub via_q: TransferReport,
    pub via_ci: TransferReport,
}

#[derive(Debug, Clone)]
pub struct Repro7 {
    pub mingens_i: usize,
    /// Every minimal generator of `I` lies in `n^6`.
    pub i_in_n6: bool,
    pub mingens_q: usize,
    /// The three containments of the chain, in order.
    pub chain: [bool; 3],
    pub deep: Option<DeepReport>,
    pub records: Vec<OutputRecord>,
}

impl Repro7 {
    pub fn stage_one_passed(&self) -> bool {
        self.mingens_i == 12 && self.i_in_n6 && (12..=13).contains(&self.mingens_q)
    }

    pub fn chain_passed(&self) -> bool {
        self.chain.iter().all(|&b| b)
    }

    /// `cx N = 2` and `cx L = 1` on the window.
    pub fn deep_passed(&self) -> Option<bool> {
        self.deep.as_ref().map(|d| d.n.class == CxClass::Two && d.l.class == CxClass::One)
    }
}

fn ideal(r: &Ring, gens: &[&str]) -> Result<Ideal> {
    let g = gens.iter().map(|s| parse_poly(s, r)).collect::<Result<Vec<Polynomial>>>()?;
    Ok(Ideal::new(r, g))
}

struct Out<'a> {
    flags: &'a Flags,
    records: Vec<OutputRecord>,
}

impl Out<'_> {
    fn push(&mut self, body: Body, ring: &Ring, check: Option<(&str, bool)>) {
        self.records.push(OutputRecord {
            kind: body.kind.to_string(),
            payload: body.payload,
            text: body.text,
            provenance: self.flags.provenance(Some(ring)),
            check: check.map(|(e, pass)| Check { expr: e.to_string(), pass }),
        });
    }
}

pub fn repro7(flags: &Flags) -> Result<Repro7> {
    let field = flags.field()?;
    let mut out = Out { flags, records: Vec::new() };
    let p = parse_ring("k[x,y,z] local", field)?;
    let u = parse_poly("x^2+y^2+z^2", &p)?;
    let r = p.quotient_by(std::slice::from_ref(&u))?;

    let i = ideal(&r, &["x^7", "y^7"])?.colon(&ideal(&r, &["x*y+y*z+x*z"])?)?;
    let gens = i.mingens()?;
    let mingens_i = gens.len();
    out.push(output::ideal_body(&i, &gens), &r, Some(("mingens(I) == 12", mingens_i == 12)));
    let i_min = Ideal::new(&r, gens.clone());
    let i_in_n6 = i_min.contained_in_power(6);
    out.push(
        output::value_body(json!(i_in_n6), i_in_n6.to_string()),
        &r,
        Some(("mingens(I) in n^6", i_in_n6)),
    );

    let mut qgens = vec![u.clone()];
    qgens.extend(gens.iter().cloned());
    let q = Ideal::new(&p, qgens);
    let qmin = q.mingens()?;
    let mingens_q = qmin.len();
    out.push(
        output::ideal_body(&q, &qmin),
        &p,
        Some(("mingens(q) in {12, 13}", (12..=13).contains(&mingens_q))),
    );

    let low = ideal(&p, &["x^8", "y^8", "x^2+y^2+z^2"])?;
    let mid = ideal(&p, &["x^7", "y^7", "x^2+y^2+z^2"])?;
    let top = ideal(&p, &["x^2", "y^2", "x^2+y^2+z^2"])?;
    let chain = [low.is_subset_of(&mid), mid.is_subset_of(&q), q.is_subset_of(&top)];
    let names = ["(x^8, y^8, u) <= (x^7, y^7, u)", "(x^7, y^7, u) <= q", "q <= (x^2, y^2, u)"];
    for (name, ok) in names.iter().zip(chain) {
        out.push(output::value_body(json!(ok), ok.to_string()), &p, Some((name, ok)));
    }

    let deep = if flags.deep { Some(deep_stage(&mut out, &p, &q)?) } else { None };
    Ok(Repro7 { mingens_i, i_in_n6, mingens_q, chain, deep, records: out.records })
}

fn deep_stage(out: &mut Out, p: &Ring, q: &Ideal) -> Result<DeepReport> {
    let a = p.quotient_by(&[parse_poly("x^2+y^2+z^2", p)?, parse_poly("x^8", p)?])?;
    let m = PresentedModule::cyclic(&ideal(&a, &["x", "y^2"])?);
    let qa = q.transfer(&a)?;
    let via_q = complexity_transfer_check(&link_via(&m, &qa)?, DEEP_BOUND)?;
    out.push(transfer_body(&via_q), &a, Some(("link through qA", via_q.matches != Some(false))));

    let t = parse_poly("y^2", &a)?;
    let mut ci_power = 0;
    for i in 1..=4u32 {
        let c = Ideal::new(&a, vec![a.pow(&t, i)]).quotient_ring()?;
        if trace_and_stability(&m.over(&c))?.stable {
            ci_power = i as usize;
            break;
        }
    }
    if ci_power == 0 {
        return Err(liaison::Error::Inconclusive("M has a free summand over A/(y^2)^i for i <= 4".into()));
    }
    let ci = Ideal::new(&a, vec![a.pow(&t, ci_power as u32)]);
    let via_ci = complexity_transfer_check(&link_via(&m, &ci)?, DEEP_BOUND)?;
    out.push(transfer_body(&via_ci), &a, Some(("link through (y^2)^i", via_ci.matches != Some(false))));

    let n = via_q.n.clone();
    let l = via_ci.n.clone();
    let sep = n.class == CxClass::Two && l.class == CxClass::One;
    out.push(
        output::value_body(
            json!({ "cx_n": n.class.to_string(), "cx_l": l.class.to_string(), "ci_power": ci_power }),
            format!("cx N = {}, cx L = {} (window [2, {DEEP_BOUND}])", n.class, l.class),
        ),
        &a,
        Some(("cx N == 2 and cx L == 1", sep)),
    );
    Ok(DeepReport { ci_power, n, l, via_q, via_ci })
}
