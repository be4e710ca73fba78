//! Text parser for polynomial expressions and ring declarations.
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' uint)?
//! base   := ident | literal | '(' expr ')'
//! literal:= int ('/' uint)?
//! ```
//!
//! A leading `-` on a term is accepted as shorthand for `0 - term`.

use num_bigint::BigInt;

use super::field::FieldSpec;
use super::monomial::MonomialOrder;
use super::poly::Polynomial;
use super::ring::{Ring, RingSpec};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(char),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let v: BigInt = text[start..i].parse().expect("digits");
            out.push((start, Tok::Int(v)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(text[start..i].to_string())));
        } else if "+-*^/()[],".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(Error::Syntax { pos: i, msg: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    ring: &'a RingSpec,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.end)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::Syntax { pos: self.offset(), msg: format!("expected `{c}`") })
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let r = self.ring;
        let mut acc = if self.eat('-') { r.neg(&self.term()?) } else { self.term()? };
        loop {
            if self.eat('+') {
                acc = r.add(&acc, &self.term()?);
            } else if self.eat('-') {
                acc = r.sub(&acc, &self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = self.ring.mul(&acc, &self.factor()?);
            } else if self.peek() == Some(&Tok::Sym('/')) {
                return Err(Error::NonLiteralDivision(self.offset()));
            } else {
                return Ok(acc);
            }
        }
    }

    fn uint(&mut self) -> Result<BigInt> {
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.pos += 1;
                Ok(v)
            }
            _ => Err(Error::Syntax { pos: self.offset(), msg: "expected an unsigned integer".into() }),
        }
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.base()?;
        if self.eat('^') {
            let at = self.offset();
            let e = self.uint()?;
            let e: u32 = e
                .try_into()
                .map_err(|_| Error::Syntax { pos: at, msg: "exponent too large".into() })?;
            Ok(self.ring.pow(&base, e))
        } else {
            Ok(base)
        }
    }

    fn base(&mut self) -> Result<Polynomial> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let idx = self.ring.var_index(&name).ok_or(Error::UnknownVariable(name))?;
                Ok(self.ring.var(idx))
            }
            Some(Tok::Int(num)) => {
                self.pos += 1;
                if self.eat('/') {
                    let den = match self.peek().cloned() {
                        Some(Tok::Int(d)) => {
                            self.pos += 1;
                            d
                        }
                        _ => return Err(Error::NonLiteralDivision(at)),
                    };
                    let c = self.ring.field().from_ratio(&num, &den)?;
                    Ok(self.ring.constant(c))
                } else {
                    Ok(self.ring.constant(self.ring.field().from_bigint(&num)))
                }
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            _ => Err(Error::Syntax { pos: at, msg: "expected a variable, literal or `(`".into() }),
        }
    }
}

/// Parses a polynomial expression over `ring` into canonical form.
pub fn parse_poly(text: &str, ring: &RingSpec) -> Result<Polynomial> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, end: text.len(), ring };
    let f = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Syntax { pos: p.offset(), msg: "trailing input".into() });
    }
    Ok(f)
}

/// Parses a ring declaration such as `GF(32003)[x,y,z] local / (x^2+y^2+z^2)`.
///
/// The field is `QQ`, `GF(p)`, or `k` (meaning `default_field`). The order keyword is
/// `local` (the default) or `grevlex`.
pub fn parse_ring(text: &str, default_field: FieldSpec) -> Result<Ring> {
    let toks = lex(text)?;
    let end = text.len();
    let mut i = 0;
    let at = |i: usize| toks.get(i).map(|t| t.0).unwrap_or(end);
    let syntax = |pos: usize, msg: &str| Error::Syntax { pos, msg: msg.to_string() };
    let field = match toks.get(i).map(|t| &t.1) {
        Some(Tok::Ident(name)) if name == "QQ" => {
            i += 1;
            FieldSpec::rationals()
        }
        Some(Tok::Ident(name)) if name == "k" => {
            i += 1;
            default_field
        }
        Some(Tok::Ident(name)) if name == "GF" => {
            i += 1;
            if toks.get(i).map(|t| &t.1) != Some(&Tok::Sym('(')) {
                return Err(syntax(at(i), "expected `(` after GF"));
            }
            i += 1;
            let p = match toks.get(i).map(|t| &t.1) {
                Some(Tok::Int(p)) => u64::try_from(p).map_err(|_| syntax(at(i), "bad prime"))?,
                _ => return Err(syntax(at(i), "expected a prime")),
            };
            i += 1;
            if toks.get(i).map(|t| &t.1) != Some(&Tok::Sym(')')) {
                return Err(syntax(at(i), "expected `)`"));
            }
            i += 1;
            FieldSpec::prime(p)?
        }
        _ => return Err(syntax(at(i), "expected a field: QQ, GF(p) or k")),
    };
    if toks.get(i).map(|t| &t.1) != Some(&Tok::Sym('[')) {
        return Err(syntax(at(i), "expected `[`"));
    }
    i += 1;
    let mut vars = Vec::new();
    loop {
        match toks.get(i).map(|t| &t.1) {
            Some(Tok::Ident(v)) => vars.push(v.clone()),
            _ => return Err(syntax(at(i), "expected a variable name")),
        }
        i += 1;
        match toks.get(i).map(|t| &t.1) {
            Some(Tok::Sym(',')) => i += 1,
            Some(Tok::Sym(']')) => {
                i += 1;
                break;
            }
            _ => return Err(syntax(at(i), "expected `,` or `]`")),
        }
    }
    let mut order = MonomialOrder::AntigradedRevlexLocal;
    if let Some(Tok::Ident(o)) = toks.get(i).map(|t| &t.1) {
        order = match o.as_str() {
            "local" | "ds" => MonomialOrder::AntigradedRevlexLocal,
            "grevlex" | "dp" => MonomialOrder::GrevlexGlobal,
            _ => return Err(syntax(at(i), "unknown order; expected `local` or `grevlex`")),
        };
        i += 1;
    }
    let ring = RingSpec::from_names(field, vars, order)?;
    if i == toks.len() {
        return Ok(ring);
    }
    if toks[i].1 != Tok::Sym('/') {
        return Err(syntax(at(i), "expected `/` before the quotient ideal"));
    }
    let rest_start = at(i + 1);
    let gens = parse_generator_list(&text[rest_start..], &ring)
        .map_err(|e| shift_error(e, rest_start))?;
    ring.quotient_by(&gens)
}

/// Parses `(f1, f2, ...)` into polynomials over `ring`.
pub fn parse_generator_list(text: &str, ring: &RingSpec) -> Result<Vec<Polynomial>> {
    let trimmed = text.trim();
    let offset = text.len() - text.trim_start().len();
    if !trimmed.starts_with('(') || !trimmed.ends_with(')') {
        return Err(Error::Syntax { pos: offset, msg: "expected a parenthesized generator list".into() });
    }
    let inner = &trimmed[1..trimmed.len() - 1];
    let mut gens = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (j, c) in inner.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                let piece = &inner[start..j];
                gens.push(parse_poly(piece, ring).map_err(|e| shift_error(e, offset + 1 + start))?);
                start = j + 1;
            }
            _ => {}
        }
    }
    let piece = &inner[start..];
    if !piece.trim().is_empty() || !gens.is_empty() {
        gens.push(parse_poly(piece, ring).map_err(|e| shift_error(e, offset + 1 + start))?);
    }
    Ok(gens)
}

fn shift_error(e: Error, by: usize) -> Error {
    match e {
        Error::Syntax { pos, msg } => Error::Syntax { pos: pos + by, msg },
        Error::NonLiteralDivision(p) => Error::NonLiteralDivision(p + by),
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Ring {
        RingSpec::new(FieldSpec::rationals(), &["x", "y"], MonomialOrder::GrevlexGlobal).unwrap()
    }

    #[test]
    fn zero_and_cancellation() {
        let r = ring();
        assert!(parse_poly("0", &r).unwrap().is_zero());
        assert!(parse_poly("x*y - y*x", &r).unwrap().is_zero());
    }

    #[test]
    fn binomial_expansion() {
        let r = ring();
        let f = parse_poly("(x+y)^2", &r).unwrap();
        assert_eq!(r.format(&f), "x^2 + 2*x*y + y^2");
    }

    #[test]
    fn rational_literals() {
        let r = ring();
        let f = parse_poly("1/2*x + 3/4", &r).unwrap();
        assert_eq!(r.format(&f), "1/2*x + 3/4");
    }

    #[test]
    fn errors_carry_positions() {
        let r = ring();
        assert_eq!(parse_poly("x + w", &r), Err(Error::UnknownVariable("w".into())));
        assert_eq!(parse_poly("x/y", &r), Err(Error::NonLiteralDivision(1)));
        assert_eq!(parse_poly("1/(1+x)", &r), Err(Error::NonLiteralDivision(0)));
        assert!(matches!(parse_poly("x + ", &r), Err(Error::Syntax { pos: 4, .. })));
        assert!(matches!(parse_poly("x $ y", &r), Err(Error::Syntax { pos: 2, .. })));
    }

    #[test]
    fn ring_declarations() {
        let k = FieldSpec::prime(32003).unwrap();
        let r = parse_ring("k[x,y,z] local / (x^2+y^2+z^2)", k).unwrap();
        assert_eq!(r.nvars(), 3);
        assert_eq!(r.quotient().len(), 1);
        assert_eq!(r.field().characteristic(), 32003);
        let q = parse_ring("QQ[a,b] grevlex", k).unwrap();
        assert_eq!(q.order(), MonomialOrder::GrevlexGlobal);
        let g = parse_ring("GF(5)[x]", k).unwrap();
        assert_eq!(g.field().characteristic(), 5);
        assert!(parse_ring("GF(6)[x]", k).is_err());
        assert!(parse_ring("k[x] / (x^2, y)", k).is_err());
        assert_eq!(parse_ring("k[x,y] / (x^2, y^2)", k).unwrap().quotient().len(), 2);
    }
}
