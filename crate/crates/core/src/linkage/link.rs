//! Horizontal linkage and linkage via an ideal.

use crate::error::{Error, Result};
use crate::homcore::{annihilator, codim_profile, syzygy_module, trace_and_stability, transpose, FreeModuleMap, PresentedModule};
use crate::polycore::Ring;
use crate::stdbasis::Ideal;

/// `N = Ω Tr M` for a stable module `M`.
pub fn horizontal_link(m: &PresentedModule) -> Result<PresentedModule> {
    let m = m.minimize();
    if m.is_zero() || !trace_and_stability(&m)?.stable {
        return Err(Error::Unstable);
    }
    Ok(syzygy_module(&transpose(&m)).minimize())
}

/// `M ∼_q N`: both over the ambient ring `A`, together with their presentations over `B = A/q`.
#[derive(Debug, Clone)]
pub struct LinkageDatum {
    pub ambient: Ring,
    pub q: Ideal,
    pub b: Ring,
    pub m: PresentedModule,
    pub n: PresentedModule,
    pub m_over_b: PresentedModule,
    pub n_over_b: PresentedModule,
    pub g: usize,
    pub m_is_cm: bool,
}

/// `M`, a module over `A/q` presented over `A`, with the relations `q F_0` added.
pub fn restrict_scalars(m: &PresentedModule, ambient: &Ring, q: &Ideal) -> Result<PresentedModule> {
    let m = m.minimize();
    let pres = m.presentation().over(ambient);
    let n0 = m.num_gens();
    let qrow = FreeModuleMap::from_rows(ambient, 1, q.gens().len(), &[q.gens().to_vec()])?;
    Ok(PresentedModule::coker(pres.hstack(&qrow.identity_kron(n0))?))
}

pub fn check_annihilates(q: &Ideal, m: &PresentedModule) -> Result<()> {
    let ann = annihilator(m);
    if q.gens().iter().all(|g| ann.contains(g)) {
        Ok(())
    } else {
        Err(Error::NotInAnnihilator)
    }
}

/// Links `M` through `q ⊆ ann M`: `N = Ω_B Tr_B M` over `B = A/q`, read back over `A`.
pub fn link_via(m: &PresentedModule, q: &Ideal) -> Result<LinkageDatum> {
    let ambient = m.ring().clone();
    ambient.check_same(q.ring())?;
    check_annihilates(q, m)?;
    let b = q.quotient_ring()?;
    let m_over_b = m.over(&b).minimize();
    let n_over_b = horizontal_link(&m_over_b)?;
    let n = restrict_scalars(&n_over_b, &ambient, q)?;
    check_annihilates(q, &n)?;
    let m = m.minimize();
    let profile = codim_profile(&m, None)?;
    Ok(LinkageDatum { ambient, q: q.clone(), b, m, n, m_over_b, n_over_b, g: profile.g, m_is_cm: profile.is_cm })
}
