//! Eisenbud operators of a resolution over `A = P/(f_1..f_c)`.

use crate::error::{Error, Result};
use crate::homcore::{resolve, FreeModuleMap, PresentedModule, Resolution};
use crate::polycore::{MonomialOrder, Polynomial, Ring};
use crate::stdbasis::module::{lift, to_vector};
use crate::stdbasis::Vector;

/// `t_j^{(k)} : F_k -> F_{k-2}` for `2 <= k <= bound`, with `∂̃_{k-1} ∂̃_k = Σ_j f_j t̃_j^{(k)}`.
#[derive(Debug, Clone)]
pub struct CohomOperators {
    pub resolution: Resolution,
    pub relations: Vec<Polynomial>,
    /// `ops[j][k - 2]`, over `A`.
    pub ops: Vec<Vec<FreeModuleMap>>,
    /// The identity `∂̃² = Σ f_j t̃_j` holds exactly over `P` in every degree.
    pub identity_holds: bool,
    /// `d ∘ t_j = t_j ∘ d` over `A` in every degree.
    pub chain_maps: bool,
    /// For one relation, whether `t^{(k)}` is an isomorphism, indexed by `k - 2`.
    pub iso: Vec<bool>,
}

impl CohomOperators {
    /// Smallest `i` such that `t^{(k)} : F_k -> F_{k-2}` is an isomorphism for every computed
    /// `k >= i + 2`, so the resolution is 2-periodic from `F_i` on (single relation only).
    pub fn periodic_from(&self) -> Option<usize> {
        if self.relations.len() != 1 || self.iso.is_empty() {
            return None;
        }
        match self.iso.iter().rposition(|&ok| !ok) {
            None => Some(0),
            Some(b) if b + 1 < self.iso.len() => Some(b + 1),
            Some(_) => None,
        }
    }
}

/// Writes `e` as `Σ f_j c_j` with polynomial `c_j`, dividing in the global polynomial ring.
fn decompose(global: &Ring, fs: &[Polynomial], e: &Polynomial) -> Result<Vec<Polynomial>> {
    if e.is_zero() {
        return Ok(vec![global.zero(); fs.len()]);
    }
    let cols: Vec<Vector> = fs.iter().map(|f| Vector::from_poly(f, 0)).collect();
    let target = to_vector(global, std::slice::from_ref(e));
    let a = lift(global, &cols, 1, &[target])
        .map_err(|_| Error::DecompositionInfeasible(format!("{} is not in the relation ideal", global.format(e))))?;
    Ok(a[0].entries(fs.len(), global))
}

fn map_over(ring: &Ring, rows: usize, cols: usize, entries: &[Vec<Polynomial>]) -> FreeModuleMap {
    let conv: Vec<Vec<Polynomial>> =
        entries.iter().map(|r| r.iter().map(|e| e.reordered(ring.order())).collect()).collect();
    FreeModuleMap::from_rows(ring, rows, cols, &conv).expect("shape")
}

pub fn eisenbud_operators(m: &PresentedModule, bound: usize) -> Result<CohomOperators> {
    let ring = m.ring().clone();
    let relations: Vec<Polynomial> = ring.quotient().to_vec();
    let c = relations.len();
    let res = resolve(m, bound);
    let global = ring.ambient().with_order(MonomialOrder::GrevlexGlobal);
    let fs: Vec<Polynomial> = relations.iter().map(|f| f.reordered(MonomialOrder::GrevlexGlobal)).collect();
    let mut ops: Vec<Vec<FreeModuleMap>> = vec![Vec::new(); c];
    let mut identity_holds = true;
    let mut iso = Vec::new();
    for k in 2..=bound {
        let (rk, rk2) = (res.rank(k), res.rank(k - 2));
        let hi = map_over(&global, res.rank(k - 1), rk, &res.d(k).to_rows());
        let sq = if rk == 0 || rk2 == 0 {
            FreeModuleMap::zero(&global, rk2, rk)
        } else {
            let lo = map_over(&global, rk2, res.rank(k - 1), &res.d(k - 1).to_rows());
            lo.compose(&hi)?
        };
        let rows = sq.to_rows();
        let mut parts = vec![vec![vec![global.zero(); rk]; rk2]; c];
        for (i, row) in rows.iter().enumerate() {
            for (l, e) in row.iter().enumerate() {
                let co = decompose(&global, &fs, e)?;
                for j in 0..c {
                    parts[j][i][l] = co[j].clone();
                }
            }
        }
        // Exact re-check of the identity over the polynomial ring.
        for (i, row) in rows.iter().enumerate() {
            for (l, e) in row.iter().enumerate() {
                let mut s = global.zero();
                for j in 0..c {
                    s = global.add(&s, &global.mul(&fs[j], &parts[j][i][l]));
                }
                if global.sub(&s, e) != global.zero() {
                    identity_holds = false;
                }
            }
        }
        for j in 0..c {
            let t = map_over(&ring, rk2, rk, &parts[j]).reduced();
            if j == 0 && c == 1 {
                iso.push(rk == rk2 && t.constant_rank() == rk);
            }
            ops[j].push(t);
        }
    }
    let mut chain_maps = true;
    for j in 0..c {
        for k in 3..=bound {
            // d_{k-2} t^{(k)} and t^{(k-1)} d_k, both F_k -> F_{k-3}.
            let t_k = &ops[j][k - 2];
            let t_k1 = &ops[j][k - 3];
            if res.rank(k - 3) == 0 {
                continue;
            }
            let left = res.d(k - 2).compose(t_k)?;
            let right = t_k1.compose(&res.d(k))?;
            if !left.sub(&right)?.is_zero() {
                chain_maps = false;
            }
        }
    }
    Ok(CohomOperators { resolution: res, relations, ops, identity_holds, chain_maps, iso })
}
