//! Free complexes and minimal free resolutions.

use super::matrix::FreeModuleMap;
use super::module::PresentedModule;
use crate::error::{Error, Result};
use crate::polycore::{Polynomial, Ring};
use crate::stdbasis::module::{self, eliminate_units, syzygies};
use crate::stdbasis::Vector;

/// A complex of free modules `F_lo, ..., F_hi`.
///
/// Homological complexes store `d_i : F_i -> F_{i-1}` as `maps[i - lo - 1]`; cohomological
/// ones store `d^i : F^i -> F^{i+1}` as `maps[i - lo]`.
#[derive(Debug, Clone)]
pub struct FreeComplex {
    pub ring: Ring,
    pub lo: i64,
    pub ranks: Vec<usize>,
    pub maps: Vec<FreeModuleMap>,
    pub cohomological: bool,
}

impl FreeComplex {
    pub fn hi(&self) -> i64 {
        self.lo + self.ranks.len() as i64 - 1
    }

    pub fn rank(&self, i: i64) -> usize {
        if i < self.lo || i > self.hi() {
            0
        } else {
            self.ranks[(i - self.lo) as usize]
        }
    }

    /// Homological: `d_i : F_i -> F_{i-1}`. Cohomological: `d^i : F^i -> F^{i+1}`.
    /// Outside the stored range this is the zero map of the right shape.
    pub fn differential(&self, i: i64) -> FreeModuleMap {
        let (src, dst, idx) = if self.cohomological {
            (i, i + 1, i - self.lo)
        } else {
            (i, i - 1, i - self.lo - 1)
        };
        if idx >= 0 && (idx as usize) < self.maps.len() {
            self.maps[idx as usize].clone()
        } else {
            FreeModuleMap::zero(&self.ring, self.rank(dst), self.rank(src))
        }
    }

    /// Checks that consecutive differentials compose to zero in the ring.
    pub fn is_complex(&self) -> bool {
        self.maps.windows(2).all(|w| {
            let c = if self.cohomological { w[1].compose(&w[0]) } else { w[0].compose(&w[1]) };
            c.map(|m| m.is_zero()).unwrap_or(false)
        })
    }

    /// True when no differential has a unit entry.
    pub fn is_minimal(&self) -> bool {
        self.maps.iter().all(|m| m.entries_in_maximal_ideal())
    }

    /// The dual complex `Hom(F, A)`: `F_i` becomes `F^i`, with `d^i = (d_{i+1})^T`.
    pub fn dual(&self) -> FreeComplex {
        assert!(!self.cohomological, "dual of a homological complex");
        FreeComplex {
            ring: self.ring.clone(),
            lo: self.lo,
            ranks: self.ranks.clone(),
            maps: self.maps.iter().map(|m| m.transpose()).collect(),
            cohomological: true,
        }
    }
}

/// Betti numbers `β_0..β_bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    pub bound: usize,
    pub betti: Vec<usize>,
}

impl BettiTable {
    pub fn get(&self, i: usize) -> usize {
        self.betti.get(i).copied().unwrap_or(0)
    }

    /// True when some computed `β_i` is zero, so the resolution is finite.
    pub fn terminates(&self) -> bool {
        self.betti.contains(&0)
    }
}

/// A minimal free resolution computed up to a homological degree.
#[derive(Debug, Clone)]
pub struct Resolution {
    pub complex: FreeComplex,
    pub betti: BettiTable,
    /// True when the kernel of the last stored differential was found to be zero.
    pub finished: bool,
}

impl Resolution {
    /// `d_i : F_i -> F_{i-1}` for `1 <= i`.
    pub fn d(&self, i: usize) -> FreeModuleMap {
        self.complex.differential(i as i64)
    }

    pub fn rank(&self, i: usize) -> usize {
        self.complex.rank(i as i64)
    }

    /// Projective dimension when the resolution is known to stop.
    pub fn projective_dimension(&self) -> Option<usize> {
        if self.finished {
            Some(self.betti.betti.iter().rposition(|&b| b > 0).unwrap_or(0))
        } else {
            None
        }
    }
}

/// Minimal free resolution of `m` through `F_bound`.
pub fn resolve(m: &PresentedModule, bound: usize) -> Resolution {
    let m = m.minimize();
    let ring = m.ring().clone();
    let mut ranks = vec![m.num_gens()];
    let mut maps: Vec<FreeModuleMap> = Vec::new();
    let mut finished = false;
    if m.num_gens() == 0 || m.num_relations() == 0 {
        finished = true;
    } else if bound >= 1 {
        let d1 = m.presentation().clone();
        ranks.push(d1.cols());
        let mut kernel = syzygies(&ring, d1.columns(), d1.rows());
        maps.push(d1);
        while ranks.len() <= bound {
            let rank = *ranks.last().unwrap();
            if kernel.is_empty() {
                finished = true;
                break;
            }
            let (chosen, next) = minimal_part(&ring, &kernel, rank);
            ranks.push(chosen.len());
            maps.push(FreeModuleMap::from_columns(&ring, rank, chosen));
            kernel = next;
        }
        if !finished && kernel.is_empty() {
            finished = true;
        }
    }
    let mut betti = ranks.clone();
    if finished {
        betti.resize(bound + 1, 0);
    }
    betti.truncate(bound + 1);
    let complex = FreeComplex { ring, lo: 0, ranks, maps, cohomological: false };
    Resolution { complex, betti: BettiTable { bound, betti }, finished }
}

/// Given generators `gens` of a submodule of `A^rank`, returns a minimal subset and
/// generators of the relations among that subset.
pub fn minimal_part(ring: &Ring, gens: &[Vector], rank: usize) -> (Vec<Vector>, Vec<Vector>) {
    let gens: Vec<Vector> = gens
        .iter()
        .map(|g| module::reduce(ring, g, rank))
        .filter(|g| !module::is_zero_mod(ring, g, rank))
        .collect();
    let n = gens.len();
    let syz = syzygies(ring, &gens, rank);
    let mut cols: Vec<Vec<Polynomial>> = syz.iter().map(|v| v.entries(n, ring)).collect();
    let mut alive = vec![true; n];
    eliminate_units(ring, &mut cols, |_| true, |row| alive[row] = false);
    let keep: Vec<usize> = (0..n).filter(|&i| alive[i]).collect();
    let chosen: Vec<Vector> = keep.iter().map(|&i| gens[i].clone()).collect();
    let next: Vec<Vector> = cols
        .iter()
        .map(|c| {
            let picked: Vec<Polynomial> = keep.iter().map(|&i| c[i].clone()).collect();
            module::reduce(ring, &module::to_vector(ring, &picked), keep.len())
        })
        .filter(|v| !module::is_zero_mod(ring, v, keep.len()))
        .collect();
    (chosen, next)
}

/// Betti numbers `β_0..β_bound` of `m`.
pub fn betti(m: &PresentedModule, bound: usize) -> BettiTable {
    resolve(m, bound).betti
}

/// Inverse of a unit, when it is a polynomial: a nonzero constant, or any unit once terms
/// of high degree vanish.
pub fn unit_inverse(ring: &Ring, u: &Polynomial) -> Option<Polynomial> {
    let field = ring.field();
    let c0 = u.constant_term()?.clone();
    let inv0 = field.inv(&c0).ok()?;
    if u.is_constant() {
        return Some(ring.constant(inv0));
    }
    let t = module::noether_bound(ring)?;
    // 1/u = c^{-1} * sum_k (1 - u/c)^k, a finite sum because (1 - u/c) lies in m.
    let e = ring.sub(&ring.one(), &ring.scale(&inv0, u));
    let mut acc = ring.one();
    let mut power = ring.one();
    for _ in 1..t {
        power = ring.mul(&power, &e).truncated(t);
        acc = ring.add(&acc, &power);
    }
    Some(ring.scale(&inv0, &acc).truncated(t))
}

/// Cancels unit entries of a homological complex, giving a homotopy-equivalent complex with
/// entries in `m`. Each cancelled unit must have a polynomial inverse (see [`unit_inverse`]).
pub fn minimize_complex(c: &FreeComplex) -> Result<FreeComplex> {
    if c.cohomological {
        return Err(Error::Shape("minimize expects a homological complex".into()));
    }
    let ring = c.ring.clone();
    let trunc = |p: Polynomial| match module::noether_bound(&ring) {
        Some(t) => p.truncated(t),
        None => p,
    };
    let mut mats: Vec<Vec<Vec<Polynomial>>> = c.maps.iter().map(|m| m.to_rows()).collect();
    let mut ranks = c.ranks.clone();
    loop {
        let mut found = None;
        'scan: for (k, m) in mats.iter().enumerate() {
            for (i, row) in m.iter().enumerate() {
                for (j, e) in row.iter().enumerate() {
                    if !e.is_zero() && ring.is_unit(e) {
                        found = Some((k, i, j));
                        break 'scan;
                    }
                }
            }
        }
        let Some((k, i, j)) = found else { break };
        let v = unit_inverse(&ring, &mats[k][i][j])
            .ok_or_else(|| Error::Inconclusive("unit entry without a polynomial inverse".into()))?;
        let rows = mats[k].len();
        let cols = mats[k][0].len();
        // Row operations clear column j (a change of basis of the target).
        for r in 0..rows {
            if r == i || mats[k][r][j].is_zero() {
                continue;
            }
            let f = ring.mul(&mats[k][r][j], &v);
            for cc in 0..cols {
                let x = ring.sub(&mats[k][r][cc], &ring.mul(&f, &mats[k][i][cc]));
                mats[k][r][cc] = trunc(x);
            }
        }
        // Column operations clear row i (a change of basis of the source).
        for cc in 0..cols {
            if cc == j || mats[k][i][cc].is_zero() {
                continue;
            }
            let f = ring.mul(&mats[k][i][cc], &v);
            for r in 0..rows {
                let x = ring.sub(&mats[k][r][cc], &ring.mul(&f, &mats[k][r][j]));
                mats[k][r][cc] = trunc(x);
            }
        }
        // The split-off summand A --u--> A is dropped; neighbours lose the matching
        // column (previous map) and row (next map), which the basis changes made zero.
        mats[k].remove(i);
        for row in mats[k].iter_mut() {
            row.remove(j);
        }
        if k > 0 {
            for row in mats[k - 1].iter_mut() {
                row.remove(i);
            }
        }
        if k + 1 < mats.len() {
            mats[k + 1].remove(j);
        }
        ranks[k] -= 1;
        ranks[k + 1] -= 1;
    }
    let maps = (0..mats.len())
        .map(|k| FreeModuleMap::from_rows(&ring, ranks[k], ranks[k + 1], &mats[k]).expect("consistent ranks"))
        .collect();
    Ok(FreeComplex { ring, lo: c.lo, ranks, maps, cohomological: false })
}

/// Generators of `ker f`, as the columns of a map into the source of `f`.
pub fn syzygy_map(f: &FreeModuleMap) -> FreeModuleMap {
    let ring = f.ring().clone();
    let cols = syzygies(&ring, f.columns(), f.rows());
    let cols: Vec<Vector> = cols.iter().map(|c| module::reduce(&ring, c, f.cols())).collect();
    FreeModuleMap::from_columns(&ring, f.cols(), cols)
}
