//! Matrices between free modules, stored by columns.

use std::fmt;

use crate::error::{Error, Result};
use crate::polycore::{Polynomial, Ring};
use crate::stdbasis::module::{self, arith, to_vector};
use crate::stdbasis::Vector;

/// A map `A^cols -> A^rows`; column `j` is the image of the `j`-th basis vector.
#[derive(Clone, PartialEq, Eq)]
pub struct FreeModuleMap {
    ring: Ring,
    rows: usize,
    columns: Vec<Vector>,
}

impl fmt::Debug for FreeModuleMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for FreeModuleMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = (0..self.rows)
            .map(|i| (0..self.cols()).map(|j| self.ring.format(&self.entry(i, j))).collect())
            .collect();
        let width = cells.iter().flatten().map(|c| c.len()).max().unwrap_or(1);
        for row in &cells {
            let padded: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "[{}]", padded.join("  "))?;
        }
        Ok(())
    }
}

impl FreeModuleMap {
    pub fn from_columns(ring: &Ring, rows: usize, columns: Vec<Vector>) -> Self {
        debug_assert!(columns.iter().all(|c| c.max_comp().is_none_or(|m| (m as usize) < rows)));
        FreeModuleMap { ring: ring.clone(), rows, columns }
    }

    /// From row-major entries.
    pub fn from_rows(ring: &Ring, rows: usize, cols: usize, entries: &[Vec<Polynomial>]) -> Result<Self> {
        if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape(format!("expected a {rows}x{cols} matrix")));
        }
        let columns = (0..cols)
            .map(|j| {
                let col: Vec<Polynomial> = (0..rows).map(|i| ring.canonical(&entries[i][j])).collect();
                to_vector(ring, &col)
            })
            .collect();
        Ok(FreeModuleMap { ring: ring.clone(), rows, columns })
    }

    pub fn zero(ring: &Ring, rows: usize, cols: usize) -> Self {
        FreeModuleMap { ring: ring.clone(), rows, columns: vec![Vector::zero(); cols] }
    }

    pub fn identity(ring: &Ring, n: usize) -> Self {
        let columns = (0..n).map(|i| Vector::from_poly(&ring.one(), i as u32)).collect();
        FreeModuleMap { ring: ring.clone(), rows: n, columns }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[Vector] {
        &self.columns
    }

    pub fn column(&self, j: usize) -> &Vector {
        &self.columns[j]
    }

    pub fn entry(&self, i: usize, j: usize) -> Polynomial {
        self.columns[j].entry(i as u32, &self.ring)
    }

    pub fn column_entries(&self, j: usize) -> Vec<Polynomial> {
        self.columns[j].entries(self.rows, &self.ring)
    }

    pub fn to_rows(&self) -> Vec<Vec<Polynomial>> {
        let cols: Vec<Vec<Polynomial>> = (0..self.cols()).map(|j| self.column_entries(j)).collect();
        (0..self.rows).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect()
    }

    /// Same entries read in another ring with the same variables.
    pub fn over(&self, ring: &Ring) -> Self {
        let rows = self.to_rows();
        FreeModuleMap::from_rows(ring, self.rows, self.cols(), &rows).expect("shape preserved")
    }

    /// Image of a vector of the source.
    pub fn apply(&self, v: &Vector) -> Vector {
        let a = arith(&self.ring);
        let mut acc = Vector::zero();
        let entries = v.entries(self.cols(), &self.ring);
        for (j, c) in entries.iter().enumerate() {
            if !c.is_zero() {
                acc = a.add(&acc, &a.mul_poly(c, &self.columns[j]), self.ring.nvars());
            }
        }
        acc
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &FreeModuleMap) -> Result<FreeModuleMap> {
        if self.cols() != other.rows {
            return Err(Error::Shape(format!(
                "cannot compose {}x{} after {}x{}",
                self.rows,
                self.cols(),
                other.rows,
                other.cols()
            )));
        }
        let columns = other.columns.iter().map(|c| self.apply(c)).collect();
        Ok(FreeModuleMap { ring: self.ring.clone(), rows: self.rows, columns })
    }

    pub fn transpose(&self) -> FreeModuleMap {
        let rows = self.to_rows();
        let t: Vec<Vec<Polynomial>> =
            (0..self.cols()).map(|j| (0..self.rows).map(|i| rows[i][j].clone()).collect()).collect();
        FreeModuleMap::from_rows(&self.ring, self.cols(), self.rows, &t).expect("shape")
    }

    pub fn add(&self, other: &FreeModuleMap) -> Result<FreeModuleMap> {
        self.check_shape(other)?;
        let a = arith(&self.ring);
        let n = self.ring.nvars();
        let columns = self.columns.iter().zip(&other.columns).map(|(x, y)| a.add(x, y, n)).collect();
        Ok(FreeModuleMap { ring: self.ring.clone(), rows: self.rows, columns })
    }

    pub fn sub(&self, other: &FreeModuleMap) -> Result<FreeModuleMap> {
        self.check_shape(other)?;
        let a = arith(&self.ring);
        let n = self.ring.nvars();
        let columns = self.columns.iter().zip(&other.columns).map(|(x, y)| a.sub(x, y, n)).collect();
        Ok(FreeModuleMap { ring: self.ring.clone(), rows: self.rows, columns })
    }

    pub fn neg(&self) -> FreeModuleMap {
        let a = arith(&self.ring);
        let m1 = self.ring.field().neg(&self.ring.field().one());
        let columns = self.columns.iter().map(|c| a.scale(&m1, c)).collect();
        FreeModuleMap { ring: self.ring.clone(), rows: self.rows, columns }
    }

    pub fn scale_poly(&self, p: &Polynomial) -> FreeModuleMap {
        let a = arith(&self.ring);
        let columns = self.columns.iter().map(|c| a.mul_poly(p, c)).collect();
        FreeModuleMap { ring: self.ring.clone(), rows: self.rows, columns }
    }

    fn check_shape(&self, other: &FreeModuleMap) -> Result<()> {
        if self.rows != other.rows || self.cols() != other.cols() {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows,
                self.cols(),
                other.rows,
                other.cols()
            )));
        }
        Ok(())
    }

    /// Entries reduced modulo the ring's quotient where possible.
    pub fn reduced(&self) -> FreeModuleMap {
        let columns = self.columns.iter().map(|c| module::reduce(&self.ring, c, self.rows)).collect();
        FreeModuleMap { ring: self.ring.clone(), rows: self.rows, columns }
    }

    /// True when every entry vanishes in the ring.
    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| module::is_zero_mod(&self.ring, c, self.rows))
    }

    /// True when no entry is a unit.
    pub fn entries_in_maximal_ideal(&self) -> bool {
        self.columns.iter().all(|c| {
            (0..self.rows as u32).all(|i| {
                let e = c.entry(i, &self.ring);
                e.is_zero() || !self.ring.is_unit(&e)
            })
        })
    }

    /// Columns placed side by side: `[self | other]`.
    pub fn hstack(&self, other: &FreeModuleMap) -> Result<FreeModuleMap> {
        if self.rows != other.rows {
            return Err(Error::Shape("row counts differ".into()));
        }
        let mut columns = self.columns.clone();
        columns.extend(other.columns.iter().cloned());
        Ok(FreeModuleMap { ring: self.ring.clone(), rows: self.rows, columns })
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &FreeModuleMap) -> FreeModuleMap {
        let mut columns = self.columns.clone();
        let off = self.rows as u32;
        for c in &other.columns {
            columns.push(shift_vector(c, off));
        }
        FreeModuleMap { ring: self.ring.clone(), rows: self.rows + other.rows, columns }
    }

    /// Rows `rows` and columns `cols`, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> FreeModuleMap {
        let all = self.to_rows();
        let entries: Vec<Vec<Polynomial>> =
            rows.iter().map(|&i| cols.iter().map(|&j| all[i][j].clone()).collect()).collect();
        FreeModuleMap::from_rows(&self.ring, rows.len(), cols.len(), &entries).expect("shape")
    }

    pub fn select_columns(&self, cols: &[usize]) -> FreeModuleMap {
        let columns = cols.iter().map(|&j| self.columns[j].clone()).collect();
        FreeModuleMap { ring: self.ring.clone(), rows: self.rows, columns }
    }

    /// `self ⊗ I_m`: entry `(a, k)` becomes the block `self[a][k] * I_m`, with the row index
    /// `a * m + b`.
    pub fn kron_identity(&self, m: usize) -> FreeModuleMap {
        let mut columns = Vec::with_capacity(self.cols() * m);
        for c in &self.columns {
            for b in 0..m {
                columns.push(spread(c, m as u32, b as u32));
            }
        }
        FreeModuleMap { ring: self.ring.clone(), rows: self.rows * m, columns }
    }

    /// `I_n ⊗ self`: block diagonal with `n` copies of `self`.
    pub fn identity_kron(&self, n: usize) -> FreeModuleMap {
        let mut columns = Vec::with_capacity(self.cols() * n);
        for a in 0..n {
            for c in &self.columns {
                columns.push(shift_vector(c, (a * self.rows) as u32));
            }
        }
        FreeModuleMap { ring: self.ring.clone(), rows: self.rows * n, columns }
    }

    /// Rank of the constant parts of the entries (the map `k^cols -> k^rows`).
    pub fn constant_rank(&self) -> usize {
        let field = *self.ring.field();
        let mut m: Vec<Vec<crate::polycore::Scalar>> = (0..self.rows)
            .map(|i| {
                (0..self.cols())
                    .map(|j| self.entry(i, j).constant_term().cloned().unwrap_or_else(|| field.zero()))
                    .collect()
            })
            .collect();
        rank_over_field(&field, &mut m)
    }
}

/// Moves every component of `v` up by `off`.
pub fn shift_vector(v: &Vector, off: u32) -> Vector {
    let mut w = v.clone();
    for t in &mut w.terms {
        t.comp += off;
    }
    w
}

/// Component `a` of `v` is sent to `a * m + b`; the relative term order is preserved.
fn spread(v: &Vector, m: u32, b: u32) -> Vector {
    let mut w = v.clone();
    for t in &mut w.terms {
        t.comp = t.comp * m + b;
    }
    w
}

/// Gaussian elimination rank.
pub fn rank_over_field(field: &crate::polycore::FieldSpec, m: &mut [Vec<crate::polycore::Scalar>]) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !field.is_zero(&m[r][c])) else { continue };
        m.swap(rank, p);
        let inv = field.inv(&m[rank][c]).expect("nonzero pivot");
        for r in 0..rows {
            if r != rank && !field.is_zero(&m[r][c]) {
                let f = field.mul(&m[r][c], &inv);
                for k in c..cols {
                    let s = field.mul(&f, &m[rank][k]);
                    m[r][k] = field.sub(&m[r][k], &s);
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}
