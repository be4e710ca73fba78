//! Ring declarations `k[x_1..x_n]` (global or localized at the origin) modulo an ideal.

use std::fmt;
use std::sync::{Arc, OnceLock};

use super::field::{FieldSpec, Scalar};
use super::monomial::{Monomial, MonomialOrder};
use super::poly::{add_scaled_shifted, Polynomial};
use crate::error::{Error, Result};

/// Shared handle to a ring.
pub type Ring = Arc<RingSpec>;

/// `k[vars]` with a monomial order, optionally modulo the ideal generated by `quotient`.
///
/// A local order models the localization at the maximal ideal `(vars)`.
pub struct RingSpec {
    field: FieldSpec,
    vars: Vec<String>,
    order: MonomialOrder,
    quotient: Vec<Polynomial>,
    pub(crate) quotient_std: OnceLock<Vec<Polynomial>>,
    pub(crate) noether: OnceLock<Option<u32>>,
    pub(crate) dim: OnceLock<usize>,
}

impl fmt::Debug for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl PartialEq for RingSpec {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.vars == other.vars
            && self.order == other.order
            && self.quotient == other.quotient
    }
}

impl Eq for RingSpec {}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}] {}", self.field, self.vars.join(","), self.order.name())?;
        if !self.quotient.is_empty() {
            let gens: Vec<String> = self.quotient.iter().map(|g| self.format(g)).collect();
            write!(f, " / ({})", gens.join(", "))?;
        }
        Ok(())
    }
}

impl RingSpec {
    /// The polynomial ring (or its localization, for a local order) with no quotient.
    pub fn new(field: FieldSpec, vars: &[&str], order: MonomialOrder) -> Result<Ring> {
        let names: Vec<String> = vars.iter().map(|v| v.to_string()).collect();
        Self::from_names(field, names, order)
    }

    pub fn from_names(field: FieldSpec, vars: Vec<String>, order: MonomialOrder) -> Result<Ring> {
        for (i, v) in vars.iter().enumerate() {
            let valid = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(Error::InvalidRing(format!("bad variable name `{v}`")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidRing(format!("duplicate variable `{v}`")));
            }
        }
        Ok(Arc::new(RingSpec {
            field,
            vars,
            order,
            quotient: Vec::new(),
            quotient_std: OnceLock::new(),
            noether: OnceLock::new(),
            dim: OnceLock::new(),
        }))
    }

    /// This ring modulo additional generators. Each generator must be a nonzero non-unit
    /// (in the local case: have no constant term).
    pub fn quotient_by(&self, gens: &[Polynomial]) -> Result<Ring> {
        let mut quotient = self.quotient.clone();
        for g in gens {
            let g = self.canonical(g);
            if g.is_zero() {
                continue;
            }
            let unit = if self.order.is_local() {
                g.constant_term().is_some()
            } else {
                g.is_constant()
            };
            if unit {
                return Err(Error::InvalidRing(format!(
                    "quotient generator {} is a unit",
                    self.format(&g)
                )));
            }
            if !quotient.contains(&g) {
                quotient.push(g);
            }
        }
        Ok(Arc::new(RingSpec {
            field: self.field,
            vars: self.vars.clone(),
            order: self.order,
            quotient,
            quotient_std: OnceLock::new(),
            noether: OnceLock::new(),
            dim: OnceLock::new(),
        }))
    }

    /// The ambient ring without any quotient.
    pub fn ambient(&self) -> Ring {
        Arc::new(RingSpec {
            field: self.field,
            vars: self.vars.clone(),
            order: self.order,
            quotient: Vec::new(),
            quotient_std: OnceLock::new(),
            noether: OnceLock::new(),
            dim: OnceLock::new(),
        })
    }

    /// Same variables and quotient, different order.
    pub fn with_order(&self, order: MonomialOrder) -> Ring {
        Arc::new(RingSpec {
            field: self.field,
            vars: self.vars.clone(),
            order,
            quotient: self.quotient.iter().map(|g| g.reordered(order)).collect(),
            quotient_std: OnceLock::new(),
            noether: OnceLock::new(),
            dim: OnceLock::new(),
        })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn is_local(&self) -> bool {
        self.order.is_local()
    }

    pub fn quotient(&self) -> &[Polynomial] {
        &self.quotient
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// True if both rings share the same field, variables and order (quotients may differ).
    pub fn same_ambient(&self, other: &RingSpec) -> bool {
        self.field == other.field && self.vars == other.vars && self.order == other.order
    }

    pub fn check_same(&self, other: &RingSpec) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!("{self} vs {other}")))
        }
    }

    // ---- constructors -------------------------------------------------------------

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero()
    }

    pub fn one(&self) -> Polynomial {
        self.constant(self.field.one())
    }

    pub fn constant(&self, c: Scalar) -> Polynomial {
        Polynomial::constant(&self.field, self.nvars(), c)
    }

    pub fn int(&self, v: i64) -> Polynomial {
        self.constant(self.field.from_i64(v))
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::monomial(self.field.one(), Monomial::variable(self.nvars(), i))
    }

    pub fn monomial(&self, exps: &[u32]) -> Polynomial {
        Polynomial::monomial(self.field.one(), Monomial::from_exponents(exps))
    }

    pub fn from_terms(&self, terms: Vec<(Scalar, Monomial)>) -> Polynomial {
        Polynomial::from_terms(&self.field, self.order, terms)
    }

    /// Brings a polynomial built elsewhere into this ring's canonical term order.
    pub fn canonical(&self, f: &Polynomial) -> Polynomial {
        self.from_terms(f.terms.clone())
    }

    // ---- arithmetic ---------------------------------------------------------------

    pub fn add(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        let one = self.field.one();
        let m = Monomial::one(self.nvars());
        Polynomial { terms: add_scaled_shifted(&self.field, self.order, &f.terms, &one, &m, &g.terms) }
    }

    pub fn sub(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        let minus = self.field.neg(&self.field.one());
        let m = Monomial::one(self.nvars());
        Polynomial {
            terms: add_scaled_shifted(&self.field, self.order, &f.terms, &minus, &m, &g.terms),
        }
    }

    pub fn neg(&self, f: &Polynomial) -> Polynomial {
        Polynomial { terms: f.terms.iter().map(|(c, m)| (self.field.neg(c), m.clone())).collect() }
    }

    pub fn scale(&self, c: &Scalar, f: &Polynomial) -> Polynomial {
        if self.field.is_zero(c) {
            return Polynomial::zero();
        }
        Polynomial { terms: f.terms.iter().map(|(a, m)| (self.field.mul(c, a), m.clone())).collect() }
    }

    /// `c * m * f`.
    pub fn mul_term(&self, c: &Scalar, m: &Monomial, f: &Polynomial) -> Polynomial {
        if self.field.is_zero(c) {
            return Polynomial::zero();
        }
        Polynomial {
            terms: f.terms.iter().map(|(a, n)| (self.field.mul(c, a), n.mul(m))).collect(),
        }
    }

    /// `f + c * m * g`.
    pub fn add_mul_term(&self, f: &Polynomial, c: &Scalar, m: &Monomial, g: &Polynomial) -> Polynomial {
        Polynomial { terms: add_scaled_shifted(&self.field, self.order, &f.terms, c, m, &g.terms) }
    }

    pub fn mul(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        let (small, big) = if f.len() <= g.len() { (f, g) } else { (g, f) };
        let mut acc = Polynomial::zero();
        for (c, m) in &small.terms {
            acc = self.add_mul_term(&acc, c, m, big);
        }
        acc
    }

    pub fn pow(&self, f: &Polynomial, mut e: u32) -> Polynomial {
        let mut base = f.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// True if `f` is invertible in this ring: a nonzero constant term for local orders,
    /// a nonzero constant for global ones.
    pub fn is_unit(&self, f: &Polynomial) -> bool {
        if self.order.is_local() {
            f.constant_term().is_some()
        } else {
            !f.is_zero() && f.is_constant()
        }
    }

    // ---- printing -----------------------------------------------------------------

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (v, e) in self.vars.iter().zip(m.exponents()) {
            match e {
                0 => {}
                1 => parts.push(v.clone()),
                _ => parts.push(format!("{v}^{e}")),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    /// Canonical text form, accepted back by [`parse_poly`](super::parse_poly).
    pub fn format(&self, f: &Polynomial) -> String {
        if f.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (c, m)) in f.terms.iter().enumerate() {
            let neg = self.field.is_negative(c);
            let abs = if neg { self.field.neg(c) } else { c.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let coeff = self.field.display(&abs);
            if m.is_one() {
                out.push_str(&coeff);
            } else if self.field.is_one(&abs) {
                out.push_str(&self.format_monomial(m));
            } else {
                out.push_str(&coeff);
                out.push('*');
                out.push_str(&self.format_monomial(m));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::parse_poly;
    use proptest::prelude::*;

    fn ring(order: MonomialOrder) -> Ring {
        RingSpec::new(FieldSpec::prime(32003).unwrap(), &["x", "y", "z"], order).unwrap()
    }

    #[test]
    fn add_inverse_is_zero() {
        let r = ring(MonomialOrder::GrevlexGlobal);
        let f = parse_poly("3*x^2 - y*z + 7", &r).unwrap();
        assert!(r.add(&f, &r.neg(&f)).is_zero());
    }

    #[test]
    fn mul_of_variables() {
        let r = ring(MonomialOrder::GrevlexGlobal);
        assert_eq!(r.mul(&r.var(0), &r.var(1)), r.monomial(&[1, 1, 0]));
    }

    #[test]
    fn scale_mod_five() {
        let f5 = FieldSpec::prime(5).unwrap();
        let r = RingSpec::new(f5, &["x"], MonomialOrder::GrevlexGlobal).unwrap();
        let g = r.scale(&f5.from_i64(3), &r.mul(&r.int(4), &r.var(0)));
        assert_eq!(g, r.mul(&r.int(2), &r.var(0)));
    }

    #[test]
    fn local_order_leads_with_lowest_degree() {
        let r = ring(MonomialOrder::AntigradedRevlexLocal);
        let f = parse_poly("x - x^2", &r).unwrap();
        assert_eq!(f.lead_monomial(), Some(&Monomial::from_exponents(&[1, 0, 0])));
    }

    #[test]
    fn rejects_unit_quotient() {
        let r = ring(MonomialOrder::AntigradedRevlexLocal);
        assert!(r.quotient_by(&[parse_poly("1 + x", &r).unwrap()]).is_err());
        assert!(r.quotient_by(&[parse_poly("x^2 + y^2 + z^2", &r).unwrap()]).is_ok());
    }

    fn small_poly() -> impl Strategy<Value = Vec<(i64, Vec<u32>)>> {
        prop::collection::vec((-5i64..5, prop::collection::vec(0u32..3, 3)), 0..5)
    }

    fn build(r: &Ring, t: &[(i64, Vec<u32>)]) -> Polynomial {
        r.from_terms(
            t.iter().map(|(c, e)| (r.field().from_i64(*c), Monomial::from_exponents(e))).collect(),
        )
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly(), local in any::<bool>()) {
            let r = ring(if local { MonomialOrder::AntigradedRevlexLocal } else { MonomialOrder::GrevlexGlobal });
            let (f, g, h) = (build(&r, &a), build(&r, &b), build(&r, &c));
            prop_assert_eq!(r.mul(&f, &g), r.mul(&g, &f));
            prop_assert_eq!(r.mul(&r.mul(&f, &g), &h), r.mul(&f, &r.mul(&g, &h)));
            prop_assert_eq!(r.mul(&f, &r.add(&g, &h)), r.add(&r.mul(&f, &g), &r.mul(&f, &h)));
            prop_assert_eq!(r.add(&r.add(&f, &g), &h), r.add(&f, &r.add(&g, &h)));
        }

        #[test]
        fn print_parse_round_trip(a in small_poly(), rational in any::<bool>()) {
            let field = if rational { FieldSpec::rationals() } else { FieldSpec::prime(32003).unwrap() };
            let r = RingSpec::new(field, &["x", "y", "z"], MonomialOrder::AntigradedRevlexLocal).unwrap();
            let f = r.scale(&field.from_ratio(&3.into(), &7.into()).unwrap(), &build(&r, &a));
            let text = r.format(&f);
            prop_assert_eq!(parse_poly(&text, &r).unwrap(), f);
        }
    }
}
