//! Hom, tensor products, Ext and Tor of presented modules.

use super::matrix::FreeModuleMap;
use super::module::{kernel_mod, subquotient, PresentedModule};
use super::resolution::{resolve, Resolution};
use crate::error::Result;
use crate::polycore::Ring;
use crate::stdbasis::Vector;

/// Standard basis vectors of `A^n`.
fn unit_vectors(ring: &Ring, n: usize) -> Vec<Vector> {
    (0..n).map(|i| Vector::from_poly(&ring.one(), i as u32)).collect()
}

/// For `d : A^q -> A^p` and `N = coker(ψ : G_1 -> G_0)`, the map `Hom(A^p, N) -> Hom(A^q, N)`
/// lifted to `G_0^p -> G_0^q`: its block `(k, l)` is `d[l][k] * I`.
fn hom_lift(d: &FreeModuleMap, m0: usize) -> FreeModuleMap {
    d.transpose().kron_identity(m0)
}

/// `Hom(M, N)` as `ker(N^{n_0} -> N^{n_1})`, minimally presented.
pub fn hom_modules(m: &PresentedModule, n: &PresentedModule) -> Result<PresentedModule> {
    let h = hom_cycles(m, n)?;
    Ok(subquotient(&h.ring, h.rank, &h.cycles, &h.relations))
}

/// Homomorphisms `M -> N` as vectors of `G_0^{n_0}` (the images of the generators of `M`),
/// taken modulo `relations`.
pub struct HomCycles {
    pub ring: Ring,
    pub rank: usize,
    pub cycles: Vec<Vector>,
    pub relations: Vec<Vector>,
}

pub fn hom_cycles(m: &PresentedModule, n: &PresentedModule) -> Result<HomCycles> {
    m.check_same_ring(n)?;
    let m = m.minimize();
    let n = n.minimize();
    let ring = m.ring().clone();
    let (n0, n1, m0) = (m.num_gens(), m.num_relations(), n.num_gens());
    if n0 == 0 || m0 == 0 {
        return Ok(HomCycles { ring, rank: 0, cycles: Vec::new(), relations: Vec::new() });
    }
    let psi = n.presentation();
    let cycles = if n1 == 0 {
        unit_vectors(&ring, n0 * m0)
    } else {
        let lift = hom_lift(m.presentation(), m0);
        kernel_mod(&ring, n1 * m0, lift.columns(), psi.identity_kron(n1).columns())
    };
    let relations = psi.identity_kron(n0).columns().to_vec();
    Ok(HomCycles { ring, rank: n0 * m0, cycles, relations })
}

/// `M ⊗ N = coker [φ ⊗ I, I ⊗ ψ]`, generator `(a, b)` at index `a * m_0 + b`.
pub fn tensor(m: &PresentedModule, n: &PresentedModule) -> Result<PresentedModule> {
    m.check_same_ring(n)?;
    let m = m.minimize();
    let n = n.minimize();
    let (n0, m0) = (m.num_gens(), n.num_gens());
    let left = m.presentation().kron_identity(m0);
    let right = n.presentation().identity_kron(n0);
    let pres = left.hstack(&right)?;
    Ok(PresentedModule::coker(pres))
}

/// `Ext^i(M, N)` computed from a resolution of `M`.
pub fn ext(m: &PresentedModule, n: &PresentedModule, i: usize) -> Result<PresentedModule> {
    m.check_same_ring(n)?;
    let res = resolve(m, i + 1);
    Ok(ext_from_resolution(&res, n, i))
}

/// `Ext^i(M, N)` for each `i` in `0..=top`, sharing one resolution.
pub fn ext_range(m: &PresentedModule, n: &PresentedModule, top: usize) -> Result<Vec<PresentedModule>> {
    m.check_same_ring(n)?;
    let res = resolve(m, top + 1);
    Ok((0..=top).map(|i| ext_from_resolution(&res, n, i)).collect())
}

pub fn ext_from_resolution(res: &Resolution, n: &PresentedModule, i: usize) -> PresentedModule {
    let n = n.minimize();
    let ring = n.ring().clone();
    let m0 = n.num_gens();
    let p = res.rank(i);
    if p == 0 || m0 == 0 {
        return PresentedModule::zero(&ring);
    }
    let psi = n.presentation();
    let next = res.rank(i + 1);
    let cycles = if next == 0 {
        unit_vectors(&ring, p * m0)
    } else {
        let lift = hom_lift(&res.d(i + 1), m0);
        kernel_mod(&ring, next * m0, lift.columns(), psi.identity_kron(next).columns())
    };
    let mut bounds: Vec<Vector> = psi.identity_kron(p).columns().to_vec();
    if i > 0 && res.rank(i - 1) > 0 {
        bounds.extend(hom_lift(&res.d(i), m0).columns().iter().cloned());
    }
    subquotient(&ring, p * m0, &cycles, &bounds)
}

/// `Tor_i(M, N)` from a resolution of `M`.
pub fn tor(m: &PresentedModule, n: &PresentedModule, i: usize) -> Result<PresentedModule> {
    m.check_same_ring(n)?;
    let res = resolve(m, i + 1);
    Ok(tor_from_resolution(&res, n, i))
}

pub fn tor_range(m: &PresentedModule, n: &PresentedModule, top: usize) -> Result<Vec<PresentedModule>> {
    m.check_same_ring(n)?;
    let res = resolve(m, top + 1);
    Ok((0..=top).map(|i| tor_from_resolution(&res, n, i)).collect())
}

pub fn tor_from_resolution(res: &Resolution, n: &PresentedModule, i: usize) -> PresentedModule {
    let n = n.minimize();
    let ring = n.ring().clone();
    let m0 = n.num_gens();
    let p = res.rank(i);
    if p == 0 || m0 == 0 {
        return PresentedModule::zero(&ring);
    }
    let psi = n.presentation();
    let cycles = if i == 0 || res.rank(i - 1) == 0 {
        unit_vectors(&ring, p * m0)
    } else {
        let prev = res.rank(i - 1);
        let map = res.d(i).kron_identity(m0);
        kernel_mod(&ring, prev * m0, map.columns(), psi.identity_kron(prev).columns())
    };
    let mut bounds: Vec<Vector> = psi.identity_kron(p).columns().to_vec();
    if res.rank(i + 1) > 0 {
        bounds.extend(res.d(i + 1).kron_identity(m0).columns().iter().cloned());
    }
    subquotient(&ring, p * m0, &cycles, &bounds)
}
