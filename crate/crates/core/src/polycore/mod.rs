//! Scalars, monomials, polynomials, rings, and their text form.

mod field;
mod monomial;
mod parse;
mod poly;
mod ring;

pub use field::{FieldKind, FieldSpec, Scalar, DEFAULT_CHARACTERISTIC};
pub use monomial::{compare_monomials, monomials_of_degree, Monomial, MonomialOrder};
pub use parse::{parse_generator_list, parse_poly, parse_ring};
pub use poly::Polynomial;
pub use ring::{Ring, RingSpec};

/// Arithmetic operations exposed through [`poly_arith`].
#[derive(Debug, Clone)]
pub enum ArithOp {
    Add(Polynomial),
    Sub(Polynomial),
    Mul(Polynomial),
    Scale(Scalar),
}

/// `f op g` over `ring`. Results are canonical but never reduced modulo the quotient.
pub fn poly_arith(f: &Polynomial, op: &ArithOp, ring: &RingSpec) -> Polynomial {
    match op {
        ArithOp::Add(g) => ring.add(f, g),
        ArithOp::Sub(g) => ring.sub(f, g),
        ArithOp::Mul(g) => ring.mul(f, g),
        ArithOp::Scale(c) => ring.scale(c, f),
    }
}
