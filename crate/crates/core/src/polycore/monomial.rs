//! Exponent vectors and the two supported monomial orders.

use std::cmp::Ordering;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// An exponent vector `x_1^{a_1} ... x_n^{a_n}` with its cached total degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: SmallVec<[u32; 4]>,
    degree: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { exps: SmallVec::from_elem(0, nvars), degree: 0 }
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial { exps: SmallVec::from_slice(exps), degree: exps.iter().sum() }
    }

    /// The monomial `x_var`.
    pub fn variable(nvars: usize, var: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[var] = 1;
        m.degree = 1;
        m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let exps: SmallVec<[u32; 4]> =
            self.exps.iter().zip(other.exps.iter()).map(|(a, b)| a + b).collect();
        Monomial { exps, degree: self.degree + other.degree }
    }

    pub fn pow(&self, e: u32) -> Monomial {
        Monomial {
            exps: self.exps.iter().map(|a| a * e).collect(),
            degree: self.degree * e,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial {
            exps: other.exps.iter().zip(self.exps.iter()).map(|(b, a)| b - a).collect(),
            degree: other.degree - self.degree,
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: SmallVec<[u32; 4]> =
            self.exps.iter().zip(other.exps.iter()).map(|(a, b)| *a.max(b)).collect();
        let degree = exps.iter().sum();
        Monomial { exps, degree }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Lexicographic comparison of exponent vectors, used for deterministic tie-breaks.
    pub fn lex_cmp(&self, other: &Monomial) -> Ordering {
        self.exps.cmp(&other.exps)
    }
}

/// Supported monomial orders.
///
/// `GrevlexGlobal` is the graded reverse lexicographic well-order (`1` smallest).
/// `AntigradedRevlexLocal` is its local counterpart: lower total degree is larger, so
/// `1 > x_i` and the leading term of a polynomial is one of lowest degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    GrevlexGlobal,
    AntigradedRevlexLocal,
}

impl MonomialOrder {
    pub fn is_local(&self) -> bool {
        matches!(self, MonomialOrder::AntigradedRevlexLocal)
    }

    pub fn name(&self) -> &'static str {
        match self {
            MonomialOrder::GrevlexGlobal => "grevlex",
            MonomialOrder::AntigradedRevlexLocal => "local",
        }
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let by_degree = a.degree.cmp(&b.degree);
        let by_degree = match self {
            MonomialOrder::GrevlexGlobal => by_degree,
            MonomialOrder::AntigradedRevlexLocal => by_degree.reverse(),
        };
        if by_degree != Ordering::Equal {
            return by_degree;
        }
        // Same degree: the monomial with the smaller exponent in the last differing
        // variable is larger.
        for (x, y) in a.exps.iter().rev().zip(b.exps.iter().rev()) {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    }
}

/// Checked comparison of two monomials under `order`.
pub fn compare_monomials(a: &Monomial, b: &Monomial, order: MonomialOrder) -> Result<Ordering> {
    if a.nvars() != b.nvars() {
        return Err(Error::LengthMismatch(a.nvars(), b.nvars()));
    }
    Ok(order.cmp(a, b))
}

/// All monomials in `nvars` variables of total degree `d`, in descending lex order.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    fn rec(nvars: usize, idx: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if idx + 1 == nvars {
            cur[idx] = left;
            out.push(Monomial::from_exponents(cur));
            return;
        }
        for e in (0..=left).rev() {
            cur[idx] = e;
            rec(nvars, idx + 1, left - e, cur, out);
        }
        cur[idx] = 0;
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if d == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    let mut cur = vec![0; nvars];
    rec(nvars, 0, d, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mono(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn grevlex_examples() {
        let g = MonomialOrder::GrevlexGlobal;
        assert_eq!(compare_monomials(&mono(&[2, 1]), &mono(&[1, 2]), g), Ok(Ordering::Greater));
        assert_eq!(compare_monomials(&mono(&[1, 1]), &mono(&[1, 1]), g), Ok(Ordering::Equal));
        // x*z < y^2 in grevlex on three variables
        assert_eq!(g.cmp(&mono(&[1, 0, 1]), &mono(&[0, 2, 0])), Ordering::Less);
    }

    #[test]
    fn local_one_is_largest() {
        let l = MonomialOrder::AntigradedRevlexLocal;
        assert_eq!(compare_monomials(&mono(&[0]), &mono(&[1]), l), Ok(Ordering::Greater));
        assert_eq!(l.cmp(&mono(&[0, 0]), &mono(&[0, 5])), Ordering::Greater);
    }

    #[test]
    fn length_mismatch_is_an_error() {
        let r = compare_monomials(&mono(&[1]), &mono(&[1, 0]), MonomialOrder::GrevlexGlobal);
        assert_eq!(r, Err(Error::LengthMismatch(1, 2)));
    }

    #[test]
    fn degree_enumeration_counts() {
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(2, 5).len(), 6);
        assert_eq!(monomials_of_degree(1, 4), vec![mono(&[4])]);
    }

    fn exps() -> impl Strategy<Value = Vec<u32>> {
        prop::collection::vec(0u32..5, 3)
    }

    fn orders() -> impl Strategy<Value = MonomialOrder> {
        prop_oneof![Just(MonomialOrder::GrevlexGlobal), Just(MonomialOrder::AntigradedRevlexLocal)]
    }

    proptest! {
        #[test]
        fn order_is_total_and_antisymmetric(a in exps(), b in exps(), o in orders()) {
            let (a, b) = (mono(&a), mono(&b));
            let ab = o.cmp(&a, &b);
            prop_assert_eq!(ab, o.cmp(&b, &a).reverse());
            prop_assert_eq!(ab == Ordering::Equal, a == b);
        }

        #[test]
        fn order_is_multiplicative(a in exps(), b in exps(), c in exps(), o in orders()) {
            let (a, b, c) = (mono(&a), mono(&b), mono(&c));
            prop_assert_eq!(o.cmp(&a, &b), o.cmp(&a.mul(&c), &b.mul(&c)));
        }

        #[test]
        fn order_is_transitive(a in exps(), b in exps(), c in exps(), o in orders()) {
            let (a, b, c) = (mono(&a), mono(&b), mono(&c));
            if o.cmp(&a, &b) == Ordering::Greater && o.cmp(&b, &c) == Ordering::Greater {
                prop_assert_eq!(o.cmp(&a, &c), Ordering::Greater);
            }
        }

        #[test]
        fn grevlex_one_is_smallest_local_one_is_largest(a in exps()) {
            let a = mono(&a);
            let one = Monomial::one(3);
            if !a.is_one() {
                prop_assert_eq!(MonomialOrder::GrevlexGlobal.cmp(&one, &a), Ordering::Less);
                prop_assert_eq!(MonomialOrder::AntigradedRevlexLocal.cmp(&one, &a), Ordering::Greater);
            }
        }
    }
}
