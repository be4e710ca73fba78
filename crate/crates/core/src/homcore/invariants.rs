//! Annihilators, trace ideals and fingerprints.

use super::functors::hom_cycles;
use super::module::{kernel_mod, PresentedModule};
use super::resolution::resolve;
use crate::error::Result;
use crate::polycore::Polynomial;
use crate::stdbasis::{Ideal, Vector};

/// `ann M`: the `a` with `a e_j` in the relation module for every generator `e_j`.
pub fn annihilator(m: &PresentedModule) -> Ideal {
    let m = m.minimize();
    let ring = m.ring().clone();
    let r = m.num_gens();
    if r == 0 {
        return Ideal::unit(&ring);
    }
    let one = ring.one();
    let diag = Vector::from_entries(
        &(0..r * r).map(|k| if k % (r + 1) == 0 { one.clone() } else { ring.zero() }).collect::<Vec<_>>(),
        &crate::stdbasis::module::vector_order(&ring),
    );
    let rels = m.presentation().identity_kron(r);
    let syz = kernel_mod(&ring, r * r, &[diag], rels.columns());
    Ideal::new(&ring, syz.iter().map(|s| s.entry(0, &ring)).collect())
}

#[derive(Debug, Clone)]
pub struct TraceReport {
    pub trace: Ideal,
    /// No free direct summand: the trace lies in the maximal ideal.
    pub stable: bool,
}

/// Trace ideal `Σ_h h(M)` over `h ∈ Hom(M, A)`, and the stability verdict.
pub fn trace_and_stability(m: &PresentedModule) -> Result<TraceReport> {
    let ring = m.ring().clone();
    let h = hom_cycles(m, &PresentedModule::free(&ring, 1))?;
    let mut gens: Vec<Polynomial> = Vec::new();
    for c in &h.cycles {
        for e in c.entries(h.rank, &ring) {
            if !e.is_zero() {
                gens.push(e);
            }
        }
    }
    let trace = Ideal::new(&ring, gens);
    let stable = !trace.is_unit();
    Ok(TraceReport { trace, stable })
}

/// Isomorphism evidence: equal fingerprints are necessary, not sufficient, for `M ≅ N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fingerprint {
    pub betti: Vec<usize>,
    /// `dim_k M / m^j M` for `j = 1..`.
    pub filtration: Vec<usize>,
    /// Lead exponents of the standard basis of `ann M`.
    pub ann_leads: Vec<Vec<u32>>,
}

pub fn fingerprint(m: &PresentedModule, betti_bound: usize, filt_bound: u32) -> Fingerprint {
    let betti = resolve(m, betti_bound).betti.betti;
    let filtration = (1..=filt_bound).map(|j| m.filtration_dim(j)).collect();
    let mut ann_leads: Vec<Vec<u32>> =
        annihilator(m).lead_ideal().gens.iter().map(|g| g.exponents().to_vec()).collect();
    ann_leads.sort();
    Fingerprint { betti, filtration, ann_leads }
}
