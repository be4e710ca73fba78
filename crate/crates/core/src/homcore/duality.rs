//! Transpose, syzygies, and the dualities `D ↦ Ext^g(D, A)` and `L ↦ Hom(L, A)`.

use super::functors::{ext_from_resolution, hom_modules};
use super::module::PresentedModule;
use super::resolution::resolve;
use crate::error::{Error, Result};
use crate::stdbasis::{is_gorenstein_artinian, krull_dim};

/// `Tr M = coker(φ^T)` for a minimal presentation `φ` of `M`.
pub fn transpose(m: &PresentedModule) -> PresentedModule {
    let m = m.minimize();
    PresentedModule::coker(m.presentation().transpose())
}

/// `Ω M`, presented by the second differential of a minimal resolution.
pub fn syzygy_module(m: &PresentedModule) -> PresentedModule {
    let res = resolve(m, 2);
    if res.rank(1) == 0 {
        return PresentedModule::zero(m.ring());
    }
    PresentedModule::coker(res.d(2))
}

/// `Ω^k M`.
pub fn syzygy_power(m: &PresentedModule, k: usize) -> PresentedModule {
    let mut out = m.minimize();
    for _ in 0..k {
        out = syzygy_module(&out);
    }
    out
}

/// Indices `i <= bound` with `Ext^i(M, A) ≠ 0`, and whether exactly one occurs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodimProfile {
    pub g: usize,
    pub is_cm: bool,
    pub nonzero: Vec<usize>,
}

/// Ext into the ring on `0..=bound` (`bound` defaults to `dim A + 1`).
pub fn codim_profile(m: &PresentedModule, bound: Option<usize>) -> Result<CodimProfile> {
    let ring = m.ring().clone();
    let dim = krull_dim(&ring);
    let bound = bound.unwrap_or(dim + 1);
    let a = PresentedModule::free(&ring, 1);
    let res = resolve(m, bound + 1);
    let nonzero: Vec<usize> = (0..=bound).filter(|&i| !ext_from_resolution(&res, &a, i).is_zero()).collect();
    if nonzero.is_empty() {
        if m.is_zero() {
            return Ok(CodimProfile { g: 0, is_cm: true, nonzero });
        }
        return Err(Error::Inconclusive(format!("Ext^i(M, A) vanishes for i <= {bound}")));
    }
    Ok(CodimProfile { g: nonzero[0], is_cm: nonzero.len() == 1, nonzero })
}

/// `D† = Ext^g(D, A)` for a Cohen–Macaulay module `D` of codimension `g`.
pub fn dagger(d: &PresentedModule) -> Result<PresentedModule> {
    let profile = codim_profile(d, None)?;
    if !profile.is_cm {
        return Err(Error::NotCohenMacaulay(profile.nonzero));
    }
    let a = PresentedModule::free(d.ring(), 1);
    let res = resolve(d, profile.g + 1);
    Ok(ext_from_resolution(&res, &a, profile.g))
}

/// `L^∨ = Hom(L, A)` over an Artinian Gorenstein ring, where `A` is its own injective hull.
pub fn artinian_dual(l: &PresentedModule) -> Result<PresentedModule> {
    let ring = l.ring();
    if krull_dim(ring) != 0 || !is_gorenstein_artinian(ring)? {
        return Err(Error::NotArtinianGorenstein);
    }
    hom_modules(l, &PresentedModule::free(ring, 1))
}
