//! Ideals of `A = P/J` and the ideal-level operations: membership, colon, intersection,
//! minimal generators, dimension and socle counts.

use std::fmt;
use std::sync::OnceLock;

use super::engine::StdBasis;
use super::module::{self, count_standard, quotient_leads};
use super::vector::Vector;
use crate::error::{Error, Result};
use crate::polycore::{monomials_of_degree, Monomial, Polynomial, Ring, RingSpec};

/// An ideal of a ring, with its standard basis computed on first use.
#[derive(Clone)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<Polynomial>,
    std: OnceLock<Vec<Polynomial>>,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = self.gens.iter().map(|g| self.ring.format(g)).collect();
        write!(f, "({})", g.join(", "))
    }
}

/// Monomial generators of a lead-term ideal; no generator divides another.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeadIdeal {
    pub gens: Vec<Monomial>,
}

impl LeadIdeal {
    pub fn from_monomials(ms: Vec<Monomial>) -> Self {
        let mut out: Vec<Monomial> = Vec::new();
        for (i, m) in ms.iter().enumerate() {
            let redundant = ms
                .iter()
                .enumerate()
                .any(|(j, o)| j != i && o.divides(m) && (o != m || j < i));
            if !redundant {
                out.push(m.clone());
            }
        }
        LeadIdeal { gens: out }
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// Largest set of variables none of whose monomials lies in the ideal.
    pub fn dimension(&self, nvars: usize) -> usize {
        let mut best = 0;
        for mask in 0u32..(1u32 << nvars) {
            let size = mask.count_ones() as usize;
            if size <= best {
                continue;
            }
            let independent = self.gens.iter().all(|g| {
                g.exponents().iter().enumerate().any(|(i, &e)| e > 0 && mask & (1 << i) == 0)
            });
            if independent {
                best = size;
            }
        }
        best
    }
}

impl Ideal {
    pub fn new(ring: &Ring, gens: Vec<Polynomial>) -> Self {
        let gens: Vec<Polynomial> =
            gens.iter().map(|g| ring.canonical(g)).filter(|g| !g.is_zero()).collect();
        Ideal { ring: ring.clone(), gens, std: OnceLock::new() }
    }

    pub fn zero(ring: &Ring) -> Self {
        Self::new(ring, Vec::new())
    }

    pub fn unit(ring: &Ring) -> Self {
        Self::new(ring, vec![ring.one()])
    }

    /// The maximal ideal generated by the variables.
    pub fn maximal(ring: &Ring) -> Self {
        Self::new(ring, (0..ring.nvars()).map(|i| ring.var(i)).collect())
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    fn basis(&self) -> StdBasis {
        let vs: Vec<Vector> = self.gens.iter().map(|g| Vector::from_poly(g, 0)).collect();
        module::submodule_basis(&self.ring, &vs, 1)
    }

    /// Reduced monic standard basis of the ideal plus the ring's quotient ideal.
    pub fn std_basis(&self) -> &[Polynomial] {
        self.std.get_or_init(|| self.basis().vectors().iter().map(|v| v.entry(0, &self.ring)).collect())
    }

    fn cached_basis(&self) -> StdBasis {
        let vs: Vec<Vector> = self.std_basis().iter().map(|g| Vector::from_poly(g, 0)).collect();
        let arith = module::arith(&self.ring);
        let e = super::engine::Engine::new(arith.field, self.ring.nvars(), arith.order, arith.truncate, 1)
            .with_shifts(vec![0]);
        StdBasis::from_vectors(e, vs)
    }

    pub fn lead_ideal(&self) -> LeadIdeal {
        let mut ms: Vec<Monomial> = self.std_basis().iter().filter_map(|g| g.lead_monomial().cloned()).collect();
        ms.extend(module::truncation_leads(&self.ring));
        LeadIdeal::from_monomials(ms)
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        let f = truncate(&self.ring, &self.ring.canonical(f));
        self.cached_basis().normal_form(&Vector::from_poly(&f, 0), true).entry(0, &self.ring)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        let f = truncate(&self.ring, &self.ring.canonical(f));
        f.is_zero() || self.cached_basis().contains(&Vector::from_poly(&f, 0))
    }

    /// Containment of ideals: every generator of `self` lies in `other`.
    pub fn is_subset_of(&self, other: &Ideal) -> bool {
        self.gens.iter().all(|g| other.contains(g))
    }

    /// True when the ideal is all of the ring.
    pub fn is_unit(&self) -> bool {
        self.contains(&self.ring.one())
    }

    /// True when the ideal is zero in the ring (every generator lies in the quotient).
    pub fn is_zero(&self) -> bool {
        Ideal::zero(&self.ring).contains_all(&self.gens)
    }

    fn contains_all(&self, fs: &[Polynomial]) -> bool {
        fs.iter().all(|f| self.contains(f))
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.ring.check_same(&other.ring)?;
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().cloned());
        Ok(Ideal::new(&self.ring, g))
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.ring.check_same(&other.ring)?;
        let mut g = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                g.push(self.ring.mul(a, b));
            }
        }
        Ok(Ideal::new(&self.ring, g))
    }

    /// `(I : g)` from the syzygies of `(g, gens I)`.
    pub fn colon_element(&self, g: &Polynomial) -> Ideal {
        let mut cols = vec![Vector::from_poly(&truncate(&self.ring, g), 0)];
        cols.extend(self.gens.iter().map(|h| Vector::from_poly(&truncate(&self.ring, h), 0)));
        let syz = module::syzygies(&self.ring, &cols, 1);
        let gens = syz.iter().map(|s| s.entry(0, &self.ring)).collect();
        Ideal::new(&self.ring, gens)
    }

    /// `(I : J) = ∩_g (I : g)` over the generators `g` of `J`.
    pub fn colon(&self, other: &Ideal) -> Result<Ideal> {
        self.ring.check_same(&other.ring)?;
        let mut acc: Option<Ideal> = None;
        for g in &other.gens {
            let part = self.colon_element(g);
            acc = Some(match acc {
                None => part,
                Some(a) => a.intersect(&part)?,
            });
        }
        Ok(acc.unwrap_or_else(|| Ideal::unit(&self.ring)))
    }

    /// `I ∩ J` from the syzygies of the columns `(1,1), (g_i,0), (0,h_j)`.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        self.ring.check_same(&other.ring)?;
        let ring = &self.ring;
        let one = ring.one();
        let z = ring.zero();
        let mut cols = vec![module::to_vector(ring, &[one.clone(), one])];
        cols.extend(self.gens.iter().map(|g| module::to_vector(ring, &[g.clone(), z.clone()])));
        cols.extend(other.gens.iter().map(|h| module::to_vector(ring, &[z.clone(), h.clone()])));
        let syz = module::syzygies(ring, &cols, 2);
        Ok(Ideal::new(ring, syz.iter().map(|s| s.entry(0, ring)).collect()))
    }

    /// A minimal generating set chosen among the given generators; its size is
    /// `dim_k I/mI`.
    pub fn mingens(&self) -> Result<Vec<Polynomial>> {
        if !self.ring.is_local()
            && !(self.gens.iter().all(|g| g.is_homogeneous())
                && self.ring.quotient().iter().all(|g| g.is_homogeneous()))
        {
            return Err(Error::NotHomogeneous);
        }
        let gens: Vec<Vector> = self.gens.iter().map(|g| Vector::from_poly(&truncate(&self.ring, g), 0)).collect();
        let keep = module::prune(&self.ring, &gens, 1);
        Ok(keep.into_iter().map(|i| self.gens[i].clone()).collect())
    }

    /// True when every generator lies in `m^k` (modulo the quotient).
    pub fn contained_in_power(&self, k: u32) -> bool {
        let n = self.ring.nvars();
        let power = Ideal::new(
            &self.ring,
            monomials_of_degree(n, k).into_iter().map(|m| self.ring.from_terms(vec![(self.ring.field().one(), m)])).collect(),
        );
        self.is_subset_of(&power)
    }

    /// The ring `A / I`.
    pub fn quotient_ring(&self) -> Result<Ring> {
        let gens: Vec<Polynomial> = self.gens.iter().filter(|g| !self.ring.is_unit(g)).cloned().collect();
        if gens.len() != self.gens.len() {
            return Err(Error::InvalidRing("quotient by the unit ideal".into()));
        }
        self.ring.quotient_by(&gens)
    }

    /// `dim_k A/I`.
    pub fn colength(&self) -> Result<usize> {
        count_standard(&self.lead_ideal().gens, self.ring.nvars())
    }

    /// Same generators read in another ring with the same variables.
    pub fn transfer(&self, ring: &Ring) -> Result<Ideal> {
        if ring.vars() != self.ring.vars() || ring.field() != self.ring.field() {
            return Err(Error::RingMismatch(format!("{} vs {}", ring, self.ring)));
        }
        Ok(Ideal::new(ring, self.gens.clone()))
    }
}

fn truncate(ring: &RingSpec, f: &Polynomial) -> Polynomial {
    match module::noether_bound(ring) {
        Some(t) => f.truncated(t),
        None => f.clone(),
    }
}

pub fn std_basis(i: &Ideal) -> Ideal {
    let out = Ideal::new(i.ring(), i.std_basis().to_vec());
    let _ = out.std.set(i.std_basis().to_vec());
    out
}

pub fn normal_form(f: &Polynomial, i: &Ideal) -> Polynomial {
    i.normal_form(f)
}

pub fn ideal_member(f: &Polynomial, i: &Ideal) -> bool {
    i.contains(f)
}

pub fn colon_ideal(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    i.colon(j)
}

pub fn intersect(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    i.intersect(j)
}

pub fn mingens(i: &Ideal) -> Result<Vec<Polynomial>> {
    i.mingens()
}

pub fn contained_in_power(i: &Ideal, k: u32) -> bool {
    i.contained_in_power(k)
}

/// Krull dimension of the ring, read off the lead ideal of its quotient.
pub fn krull_dim(ring: &RingSpec) -> usize {
    *ring.dim.get_or_init(|| LeadIdeal::from_monomials(quotient_leads(ring)).dimension(ring.nvars()))
}

/// `dim_k A` for an Artinian ring.
pub fn vspace_dim(ring: &RingSpec) -> Result<usize> {
    let d = krull_dim(ring);
    if d > 0 {
        return Err(Error::PositiveDimension(d));
    }
    count_standard(&LeadIdeal::from_monomials(quotient_leads(ring)).gens, ring.nvars())
}

/// `dim_k (0 : m)` for an Artinian ring.
pub fn socle_dim(ring: &Ring) -> Result<usize> {
    let total = vspace_dim(ring)?;
    let socle = Ideal::zero(ring).colon(&Ideal::maximal(ring))?;
    let rest = socle.colength()?;
    Ok(total - rest)
}

pub fn is_gorenstein_artinian(ring: &Ring) -> Result<bool> {
    Ok(socle_dim(ring)? == 1)
}
