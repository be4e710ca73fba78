//! Finitely presented modules `coker(F_1 -> F_0)`.

use std::fmt;

use super::matrix::FreeModuleMap;
use crate::error::{Error, Result};
use crate::polycore::{monomials_of_degree, Polynomial, Ring};
use crate::stdbasis::module::{self, colength, eliminate_units, submodule_basis, syzygies};
use crate::stdbasis::{Ideal, Vector};

/// The cokernel of `presentation`; rows are generators, columns relations.
#[derive(Clone, PartialEq, Eq)]
pub struct PresentedModule {
    presentation: FreeModuleMap,
    minimal: bool,
}

impl fmt::Debug for PresentedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "coker {}x{}:\n{}", self.num_gens(), self.num_relations(), self.presentation)
    }
}

impl PresentedModule {
    pub fn new(presentation: FreeModuleMap) -> Self {
        PresentedModule { presentation, minimal: false }
    }

    /// Minimal presentation of the cokernel of `presentation`.
    pub fn coker(presentation: FreeModuleMap) -> Self {
        Self::new(presentation).minimize()
    }

    pub fn free(ring: &Ring, rank: usize) -> Self {
        PresentedModule { presentation: FreeModuleMap::zero(ring, rank, 0), minimal: true }
    }

    pub fn zero(ring: &Ring) -> Self {
        Self::free(ring, 0)
    }

    /// `A / I`.
    pub fn cyclic(ideal: &Ideal) -> Self {
        let ring = ideal.ring();
        let cols = ideal.gens().iter().map(|g| Vector::from_poly(g, 0)).collect();
        Self::coker(FreeModuleMap::from_columns(ring, 1, cols))
    }

    /// The residue field `k = A/m`.
    pub fn residue_field(ring: &Ring) -> Self {
        Self::cyclic(&Ideal::maximal(ring))
    }

    pub fn ring(&self) -> &Ring {
        self.presentation.ring()
    }

    pub fn presentation(&self) -> &FreeModuleMap {
        &self.presentation
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    pub fn num_gens(&self) -> usize {
        self.presentation.rows()
    }

    pub fn num_relations(&self) -> usize {
        self.presentation.cols()
    }

    /// Cancels unit entries (dropping generators) and redundant relations. For a local ring,
    /// or graded input over a global one, the result has all entries in `m`.
    pub fn minimize(&self) -> PresentedModule {
        if self.minimal {
            return self.clone();
        }
        let ring = self.ring().clone();
        let n = self.num_gens();
        let mut cols: Vec<Vec<Polynomial>> = (0..self.num_relations())
            .map(|j| self.presentation.column_entries(j))
            .filter(|c| !module::is_zero_mod(&ring, &module::to_vector(&ring, c), n))
            .collect();
        let mut alive = vec![true; n];
        eliminate_units(&ring, &mut cols, |_| true, |row| alive[row] = false);
        let keep_rows: Vec<usize> = (0..n).filter(|&i| alive[i]).collect();
        let vectors: Vec<Vector> = cols
            .iter()
            .map(|c| {
                let picked: Vec<Polynomial> = keep_rows.iter().map(|&i| c[i].clone()).collect();
                module::reduce(&ring, &module::to_vector(&ring, &picked), keep_rows.len())
            })
            .filter(|v| !module::is_zero_mod(&ring, v, keep_rows.len()))
            .collect();
        let kept = module::prune(&ring, &vectors, keep_rows.len());
        let columns = kept.into_iter().map(|i| vectors[i].clone()).collect();
        PresentedModule {
            presentation: FreeModuleMap::from_columns(&ring, keep_rows.len(), columns),
            minimal: true,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.minimize().num_gens() == 0
    }

    /// Same presentation over another ring with the same variables (e.g. `A/q` for a module
    /// over `A` annihilated by `q`).
    pub fn over(&self, ring: &Ring) -> PresentedModule {
        PresentedModule::new(self.presentation.over(ring))
    }

    /// `dim_k M`, when finite.
    pub fn length(&self) -> Result<usize> {
        let ring = self.ring();
        let b = submodule_basis(ring, self.presentation.columns(), self.num_gens());
        colength(ring, &b, self.num_gens())
    }

    /// `dim_k M / m^j M`.
    pub fn filtration_dim(&self, j: u32) -> usize {
        let ring = self.ring();
        let n = self.num_gens();
        let mut gens: Vec<Vector> = self.presentation.columns().to_vec();
        let one = ring.field().one();
        for c in 0..n as u32 {
            for m in monomials_of_degree(ring.nvars(), j) {
                gens.push(Vector::from_poly(&ring.from_terms(vec![(one.clone(), m)]), c));
            }
        }
        let b = submodule_basis(ring, &gens, n);
        colength(ring, &b, n).expect("m-primary by construction")
    }

    pub fn direct_sum(&self, other: &PresentedModule) -> Result<PresentedModule> {
        self.ring().check_same(other.ring())?;
        Ok(PresentedModule {
            presentation: self.presentation.direct_sum(&other.presentation),
            minimal: self.minimal && other.minimal,
        })
    }

    /// True when `v` (a vector of the free cover) is zero in the module.
    pub fn represents_zero(&self, v: &Vector) -> bool {
        submodule_basis(self.ring(), self.presentation.columns(), self.num_gens()).contains(v)
    }

    pub fn check_same_ring(&self, other: &PresentedModule) -> Result<()> {
        if self.ring() != other.ring() {
            return Err(Error::RingMismatch(format!("{} vs {}", self.ring(), other.ring())));
        }
        Ok(())
    }
}

/// The module generated by `gens` inside `F / <rels>` (all vectors of the same free module),
/// with a minimal presentation.
pub fn subquotient(ring: &Ring, rank: usize, gens: &[Vector], rels: &[Vector]) -> PresentedModule {
    let k = gens.len();
    if k == 0 {
        return PresentedModule::zero(ring);
    }
    let mut cols: Vec<Vector> = gens.to_vec();
    cols.extend(rels.iter().cloned());
    let syz = syzygies(ring, &cols, rank);
    let projected: Vec<Vector> = syz
        .iter()
        .map(|s| module::reduce(ring, &s.restrict(0, k as u32), k))
        .filter(|v| !v.is_zero())
        .collect();
    PresentedModule::coker(FreeModuleMap::from_columns(ring, k, projected))
}

/// Generators of `{x in A^s : sum_j x_j cols[j] ∈ <rels>}`, where `cols` and `rels` live in
/// `A^rank`.
pub fn kernel_mod(ring: &Ring, rank: usize, cols: &[Vector], rels: &[Vector]) -> Vec<Vector> {
    let s = cols.len();
    if s == 0 {
        return Vec::new();
    }
    let mut all: Vec<Vector> = cols.to_vec();
    all.extend(rels.iter().cloned());
    syzygies(ring, &all, rank)
        .iter()
        .map(|v| module::reduce(ring, &v.restrict(0, s as u32), s))
        .filter(|v| !v.is_zero())
        .collect()
}
