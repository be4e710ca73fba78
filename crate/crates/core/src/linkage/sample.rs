//! Seeded random instances for the property harnesses.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::homcore::{FreeModuleMap, PresentedModule};
use crate::polycore::{monomials_of_degree, parse_ring, FieldSpec, Polynomial, Ring};
use crate::stdbasis::{Ideal, LeadIdeal};

/// The Artinian Gorenstein bases used by the harnesses: `k[x]/(x^n)` for `n = 3, 4`,
/// `k[x,y]/(x^2,y^2)` and `k[x,y]/(x^3,y^2)`.
pub fn artinian_gorenstein_rings(field: FieldSpec) -> Vec<Ring> {
    ["k[x] local / (x^3)", "k[x] local / (x^4)", "k[x,y] local / (x^2, y^2)", "k[x,y] local / (x^3, y^2)"]
        .iter()
        .map(|t| parse_ring(t, field).expect("built-in ring"))
        .collect()
}

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        items.choose(&mut self.rng).expect("nonempty")
    }

    /// A random element of `m`: one or two standard monomials of degree `1..=max_deg` with
    /// small coefficients.
    pub fn element_of_max(&mut self, ring: &Ring, max_deg: u32) -> Polynomial {
        let leads = LeadIdeal::from_monomials(crate::stdbasis::module::quotient_leads(ring));
        let mut pool = Vec::new();
        for d in 1..=max_deg {
            pool.extend(monomials_of_degree(ring.nvars(), d).into_iter().filter(|m| !leads.contains(m)));
        }
        if pool.is_empty() {
            return ring.zero();
        }
        let field = ring.field();
        let terms = 1 + self.below(2);
        let mut f = ring.zero();
        for _ in 0..terms {
            let m = self.pick(&pool).clone();
            let c = self.rng.gen_range(1..=3) * if self.rng.gen_bool(0.5) { 1 } else { -1 };
            f = ring.add(&f, &ring.from_terms(vec![(field.from_i64(c), m)]));
        }
        f
    }

    /// A random non-unit that is not zero in the ring.
    pub fn nonzero_non_unit(&mut self, ring: &Ring, max_deg: u32) -> Polynomial {
        let zero = Ideal::zero(ring);
        for _ in 0..32 {
            let f = self.element_of_max(ring, max_deg);
            if !zero.contains(&f) {
                return f;
            }
        }
        ring.var(0)
    }

    /// `coker` of a random `rows x cols` matrix over `m`, with `rows, cols` at most the bounds.
    pub fn module(&mut self, ring: &Ring, max_rows: usize, max_cols: usize) -> PresentedModule {
        let rows = 1 + self.below(max_rows);
        let cols = 1 + self.below(max_cols);
        let entries: Vec<Vec<Polynomial>> = (0..rows)
            .map(|_| {
                (0..cols)
                    .map(|_| if self.below(3) == 0 { ring.zero() } else { self.element_of_max(ring, 2) })
                    .collect()
            })
            .collect();
        PresentedModule::coker(FreeModuleMap::from_rows(ring, rows, cols, &entries).expect("shape"))
    }

    /// A random module that is nonzero and has no free summand.
    pub fn stable_module(&mut self, ring: &Ring, max_rows: usize, max_cols: usize) -> PresentedModule {
        for _ in 0..64 {
            let m = self.module(ring, max_rows, max_cols);
            if !m.is_zero() && crate::homcore::trace_and_stability(&m).map(|t| t.stable).unwrap_or(false) {
                return m;
            }
        }
        PresentedModule::residue_field(ring)
    }

    /// A quasi-Gorenstein ideal of an Artinian Gorenstein ring: `(0 : a)` for a random element
    /// `a`, or the zero ideal.
    /// The quotient is kept of length at least 2, so that stable modules over it exist.
    pub fn quasi_gorenstein_ideal(&mut self, ring: &Ring) -> Ideal {
        if self.below(3) != 0 {
            for _ in 0..16 {
                let a = self.nonzero_non_unit(ring, 2);
                let q = Ideal::zero(ring).colon_element(&a);
                if q.colength().is_ok_and(|l| l >= 2) {
                    return q;
                }
            }
        }
        Ideal::zero(ring)
    }

    /// An Artinian Gorenstein ring `A`, a quasi-Gorenstein `q` (zero when `zero_q`), and a module
    /// over `A/q` without free summands over `A/q`, presented over `A`.
    pub fn linked_instance(&mut self, rings: &[Ring], zero_q: bool) -> (Ring, Ideal, PresentedModule) {
        let a = self.pick(rings).clone();
        let q = if zero_q { Ideal::zero(&a) } else { self.quasi_gorenstein_ideal(&a) };
        let b = q.quotient_ring().expect("proper ideal");
        let mb = self.stable_module(&b, 2, 3);
        let m = crate::linkage::restrict_scalars(&mb, &a, &q).expect("same variables");
        (a, q, m)
    }
}
