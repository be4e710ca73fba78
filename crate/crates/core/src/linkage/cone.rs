//! The mapping cone of the dual of a lift `Q -> P`, and the MCM approximation read off it.

use super::link::{check_annihilates, horizontal_link, restrict_scalars};
use crate::error::{Error, Result};
use crate::homcore::{
    codim_profile, ext_from_resolution, fingerprint, resolve, subquotient, FreeComplex, FreeModuleMap,
    PresentedModule, Resolution,
};
use crate::polycore::Ring;
use crate::stdbasis::module::{lift, syzygies};
use crate::stdbasis::{krull_dim, Ideal, Vector};

/// `C^i = (Q*)^i ⊕ (P*)^{i+1}` for `-1 <= i <= bound + 1`, with
/// `d(q, p) = (d_{Q*} q + φ*(p), -d_{P*} p)`.
#[derive(Debug, Clone)]
pub struct ConeComplex {
    pub c: FreeComplex,
    pub g: usize,
    pub bound: usize,
    pub p: Resolution,
    pub q: Resolution,
    /// `φ_i : Q_i -> P_i`.
    pub lift: Vec<FreeModuleMap>,
    pub ideal: Ideal,
    pub module: PresentedModule,
}

fn blocks(ring: &Ring, rows: [usize; 2], cols: [usize; 2], parts: [[Option<FreeModuleMap>; 2]; 2]) -> FreeModuleMap {
    let mut entries = vec![vec![ring.zero(); cols[0] + cols[1]]; rows[0] + rows[1]];
    for (bi, row) in parts.iter().enumerate() {
        for (bj, part) in row.iter().enumerate() {
            let Some(part) = part else { continue };
            let r0 = if bi == 0 { 0 } else { rows[0] };
            let c0 = if bj == 0 { 0 } else { cols[0] };
            for (i, line) in part.to_rows().into_iter().enumerate() {
                for (j, e) in line.into_iter().enumerate() {
                    entries[r0 + i][c0 + j] = e;
                }
            }
        }
    }
    FreeModuleMap::from_rows(ring, rows[0] + rows[1], cols[0] + cols[1], &entries).expect("block shape")
}

/// Builds the cone for `M` (over `A`) and `q ⊆ ann M`, up to cohomological degree `bound`.
pub fn ferrand_cone(m: &PresentedModule, q: &Ideal, bound: usize) -> Result<ConeComplex> {
    let ring = m.ring().clone();
    ring.check_same(q.ring())?;
    check_annihilates(q, m)?;
    let m = m.minimize();
    let profile = codim_profile(&m, None)?;
    if !profile.is_cm {
        return Err(Error::NotCohenMacaulay(profile.nonzero));
    }
    let p = resolve(&m, bound + 2);
    let b0 = p.rank(0);
    let qrow = FreeModuleMap::from_rows(&ring, 1, q.gens().len(), &[q.gens().to_vec()])?;
    let pbar = PresentedModule::new(qrow.identity_kron(b0));
    let qres = resolve(&pbar, bound + 2);
    if qres.rank(0) != b0 {
        return Err(Error::Shape("q must lie in the maximal ideal".into()));
    }
    let mut phi = vec![FreeModuleMap::identity(&ring, b0)];
    for i in 1..=bound + 1 {
        let dq = qres.d(i);
        let targets: Vec<Vector> = dq.columns().iter().map(|c| phi[i - 1].apply(c)).collect();
        let next = if p.rank(i) == 0 {
            FreeModuleMap::zero(&ring, 0, qres.rank(i))
        } else {
            let dp = p.d(i);
            let cols = lift(&ring, dp.columns(), dp.rows(), &targets)?;
            FreeModuleMap::from_columns(&ring, p.rank(i), cols)
        };
        phi.push(next);
    }
    let rank_q = |i: i64| if i < 0 { 0 } else { qres.rank(i as usize) };
    let rank_p = |i: i64| if i < 0 { 0 } else { p.rank(i as usize) };
    let top = bound as i64 + 1;
    let ranks: Vec<usize> = (-1..=top).map(|i| rank_q(i) + rank_p(i + 1)).collect();
    let mut maps = Vec::new();
    for i in -1..top {
        let rows = [rank_q(i + 1), rank_p(i + 2)];
        let cols = [rank_q(i), rank_p(i + 1)];
        let dq = if i >= 0 { Some(qres.d(i as usize + 1).transpose()) } else { None };
        let ph = Some(phi[(i + 1) as usize].transpose());
        let dp = Some(p.d((i + 2) as usize).transpose().neg());
        maps.push(blocks(&ring, rows, cols, [[dq, ph], [None, dp]]));
    }
    let c = FreeComplex { ring, lo: -1, ranks, maps, cohomological: true };
    Ok(ConeComplex { c, g: profile.g, bound, p, q: qres, lift: phi, ideal: q.clone(), module: m })
}

impl ConeComplex {
    pub fn ring(&self) -> &Ring {
        &self.c.ring
    }

    /// `Z^i = ker d^i` as vectors of `C^i`.
    pub fn cocycles(&self, i: i64) -> Vec<Vector> {
        let ring = self.ring();
        let here = self.c.rank(i);
        if here == 0 {
            return Vec::new();
        }
        let d = self.c.differential(i);
        if self.c.rank(i + 1) == 0 {
            return (0..here).map(|k| Vector::from_poly(&ring.one(), k as u32)).collect();
        }
        syzygies(ring, d.columns(), d.rows())
    }

    /// `B^i = im d^{i-1}` as vectors of `C^i`.
    pub fn coboundaries(&self, i: i64) -> Vec<Vector> {
        if self.c.rank(i - 1) == 0 {
            return Vec::new();
        }
        self.c.differential(i - 1).columns().iter().filter(|v| !v.is_zero()).cloned().collect()
    }

    pub fn cohomology(&self, i: i64) -> PresentedModule {
        subquotient(self.ring(), self.c.rank(i), &self.cocycles(i), &self.coboundaries(i))
    }

    /// Degrees in `-1..=bound` where the cohomology does not vanish.
    pub fn nonzero_cohomology(&self) -> Vec<i64> {
        (-1..=self.bound as i64).filter(|&i| !self.cohomology(i).is_zero()).collect()
    }
}

/// Outcome of checking that the cone's cohomology is `N` in degree `g` and zero elsewhere.
#[derive(Debug, Clone)]
pub struct ConeReport {
    pub g: usize,
    pub nonzero: Vec<i64>,
    pub concentrated: bool,
    pub is_complex: bool,
    /// Fingerprints agree between `H^g(C)` and `Ω_B Tr_B M`.
    pub matches_link: bool,
}

impl ConeReport {
    pub fn passed(&self) -> bool {
        self.concentrated && self.is_complex && self.matches_link
    }
}

pub fn cone_report(cone: &ConeComplex) -> Result<ConeReport> {
    let nonzero = cone.nonzero_cohomology();
    let g = cone.g as i64;
    let concentrated = nonzero.iter().all(|&i| i == g);
    let hg = cone.cohomology(g);
    let ambient = cone.ring().clone();
    let b = cone.ideal.quotient_ring()?;
    let n = restrict_scalars(&horizontal_link(&cone.module.over(&b))?, &ambient, &cone.ideal)?;
    let (bb, fb) = (cone.bound.min(4), 6);
    let matches_link = fingerprint(&hg, bb, fb) == fingerprint(&n, bb, fb);
    Ok(ConeReport { g: cone.g, nonzero, concentrated, is_complex: cone.c.is_complex(), matches_link })
}

/// `0 -> Y -> X -> N -> 0` with `Y = B^g(C)`, `X = Z^g(C)`, `N = H^g(C)`.
#[derive(Debug, Clone)]
pub struct MCMApprox {
    pub y: PresentedModule,
    pub x: PresentedModule,
    pub target: PresentedModule,
    pub y_betti: Vec<usize>,
    /// `resolve(Y)` reaches zero within `dim A` steps.
    pub y_finite: bool,
    /// `Ext^i(X, A) = 0` for `1 <= i <= ext_bound`.
    pub x_mcm: bool,
    pub ext_bound: usize,
    /// `Y ⊆ X` and, at finite length, `ℓ(X) = ℓ(Y) + ℓ(N)`.
    pub exact: bool,
}

impl MCMApprox {
    pub fn certified(&self) -> bool {
        self.y_finite && self.x_mcm && self.exact
    }
}

pub fn mcm_approx(cone: &ConeComplex, ext_bound: usize) -> Result<MCMApprox> {
    let ring = cone.ring().clone();
    let g = cone.g as i64;
    let rank = cone.c.rank(g);
    let z = cone.cocycles(g);
    let bdry = cone.coboundaries(g);
    let x = subquotient(&ring, rank, &z, &[]);
    let y = subquotient(&ring, rank, &bdry, &[]);
    let target = subquotient(&ring, rank, &z, &bdry);
    let dim = krull_dim(&ring);
    let yres = resolve(&y, dim + 1);
    let y_betti = yres.betti.betti.clone();
    let y_finite = yres.betti.get(dim + 1) == 0;
    let a = PresentedModule::free(&ring, 1);
    let xres = resolve(&x, ext_bound + 1);
    let x_mcm = (1..=ext_bound).all(|i| ext_from_resolution(&xres, &a, i).is_zero());
    let contained = {
        let w = subquotient(&ring, rank, &bdry, &z);
        // `B^g ⊆ Z^g` exactly when `B^g` dies modulo `Z^g`.
        w.is_zero()
    };
    let lengths = (x.length(), y.length(), target.length());
    let exact = contained
        && match lengths {
            (Ok(lx), Ok(ly), Ok(ln)) => lx == ly + ln,
            _ => true,
        };
    Ok(MCMApprox { y, x, target, y_betti, y_finite, x_mcm, ext_bound, exact })
}

