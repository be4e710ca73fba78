//! The session language.
//!
//! ```text
//! script    := (statement ';')*
//! statement := 'ring' NAME ('=' ring-text)?
//!            | ('ideal' | 'module' | 'poly' | 'let') NAME '=' expr
//!            | 'show' expr
//!            | 'check' expr (cmp expr)?
//! cmp       := '==' | '!=' | '<=' | '>=' | '<' | '>'
//! expr      := term (('+' | '-') term)*
//! term      := unary (('*' | '/') unary)*
//! unary     := '-' unary | power
//! power     := atom ('^' unary)?
//! atom      := INT | NAME | NAME '(' args ')' | '(' expr ')' | '[' rows ']'
//! ```
//!
//! `#` and `//` start comments that run to the end of the line.

use std::collections::BTreeSet;

use liaison::polycore::{parse_ring, FieldSpec};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at offset {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { pos, msg: msg.into() })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CmpOp {
    Eq,
    Ne,
    Le,
    Ge,
    Lt,
    Gt,
}

impl CmpOp {
    pub fn symbol(&self) -> &'static str {
        match self {
            CmpOp::Eq => "==",
            CmpOp::Ne => "!=",
            CmpOp::Le => "<=",
            CmpOp::Ge => ">=",
            CmpOp::Lt => "<",
            CmpOp::Gt => ">",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Int(i64, usize),
    Name(String, usize),
    Call(String, Vec<Expr>, usize),
    Neg(Box<Expr>, usize),
    Bin(BinOp, Box<Expr>, Box<Expr>, usize),
    Matrix(Vec<Vec<Expr>>, usize),
}

impl Expr {
    pub fn pos(&self) -> usize {
        match self {
            Expr::Int(_, p)
            | Expr::Name(_, p)
            | Expr::Call(_, _, p)
            | Expr::Neg(_, p)
            | Expr::Bin(_, _, _, p)
            | Expr::Matrix(_, p) => *p,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BindKind {
    Ideal,
    Module,
    Poly,
    Let,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Stmt {
    /// Declares a ring (`text` is the declaration) or switches back to a declared one.
    Ring { name: String, text: Option<String> },
    Bind { kind: BindKind, name: String, expr: Expr },
    Show(Expr),
    Check { lhs: Expr, cmp: Option<(CmpOp, Expr)> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Statement {
    /// Byte offset of the statement in the script.
    pub offset: usize,
    /// Statement source without the terminating `;`, trimmed.
    pub text: String,
    pub stmt: Stmt,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Script {
    pub statements: Vec<Statement>,
}

/// Bare words accepted as arguments without being bound.
pub const KEYWORDS: [&str; 3] = ["ext_from", "ext_into", "tor"];

/// Blanks out comments, keeping byte offsets.
fn strip_comments(src: &str) -> String {
    let mut out = String::with_capacity(src.len());
    for line in src.split_inclusive('\n') {
        let cut = [line.find('#'), line.find("//")].into_iter().flatten().min();
        match cut {
            Some(c) => {
                out.push_str(&line[..c]);
                for ch in line[c..].chars() {
                    if ch == '\n' {
                        out.push('\n');
                    } else {
                        out.extend(std::iter::repeat_n(' ', ch.len_utf8()));
                    }
                }
            }
            None => out.push_str(line),
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(i64),
    Sym(&'static str),
}

// Two-character symbols come first so they win over their prefixes.
const SYMBOLS: [&str; 17] = ["==", "!=", "<=", ">=", "<", ">", "=", "+", "-", "*", "/", "^", "(", ")", "[", "]", ","];

fn lex(text: &str, base: usize) -> Result<Vec<(usize, Tok)>, ParseError> {
    let b = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    'outer: while i < b.len() {
        let c = b[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let s = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            let v: i64 = text[s..i].parse().map_err(|_| ParseError { pos: base + s, msg: "integer too large".into() })?;
            out.push((base + s, Tok::Int(v)));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let s = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            out.push((base + s, Tok::Ident(text[s..i].to_string())));
            continue;
        }
        if text[i..].starts_with("**") {
            out.push((base + i, Tok::Sym("^")));
            i += 2;
            continue;
        }
        for s in SYMBOLS {
            if text[i..].starts_with(s) {
                out.push((base + i, Tok::Sym(s)));
                i += s.len();
                continue 'outer;
            }
        }
        let ch = text[i..].chars().next().unwrap_or('?');
        return err(base + i, format!("unexpected character `{ch}`"));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.end)
    }

    fn eat(&mut self, s: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Sym(t)) if *t == s) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<(), ParseError> {
        if self.eat(s) {
            Ok(())
        } else {
            err(self.offset(), format!("expected `{s}`"))
        }
    }

    fn ident(&mut self) -> Result<(String, usize), ParseError> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok((s, at))
            }
            _ => err(at, "expected a name"),
        }
    }

    fn done(&self) -> bool {
        self.pos == self.toks.len()
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let at = self.offset();
            let op = if self.eat("+") {
                BinOp::Add
            } else if self.eat("-") {
                BinOp::Sub
            } else {
                return Ok(lhs);
            };
            let rhs = self.term()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs), at);
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let at = self.offset();
            let op = if self.eat("*") {
                BinOp::Mul
            } else if self.eat("/") {
                BinOp::Div
            } else {
                return Ok(lhs);
            };
            let rhs = self.unary()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs), at);
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        let at = self.offset();
        if self.eat("-") {
            return Ok(Expr::Neg(Box::new(self.unary()?), at));
        }
        let base = self.atom()?;
        let at = self.offset();
        if self.eat("^") {
            let e = self.unary()?;
            return Ok(Expr::Bin(BinOp::Pow, Box::new(base), Box::new(e), at));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.pos += 1;
                Ok(Expr::Int(v, at))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if self.eat("(") {
                    let args = self.list(")")?;
                    Ok(Expr::Call(name, args, at))
                } else {
                    Ok(Expr::Name(name, at))
                }
            }
            Some(Tok::Sym("(")) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(")")?;
                Ok(e)
            }
            Some(Tok::Sym("[")) => {
                self.pos += 1;
                let mut rows = Vec::new();
                if !self.eat("]") {
                    loop {
                        let row_at = self.offset();
                        if !self.eat("[") {
                            return err(row_at, "expected `[` to start a matrix row");
                        }
                        rows.push(self.list("]")?);
                        if self.eat("]") {
                            break;
                        }
                        self.expect(",")?;
                    }
                }
                let width = rows.first().map(|r| r.len()).unwrap_or(0);
                if rows.iter().any(|r| r.len() != width) {
                    return err(at, "matrix rows have different lengths");
                }
                Ok(Expr::Matrix(rows, at))
            }
            _ => err(at, "expected an expression"),
        }
    }

    /// Comma-separated expressions up to `close`.
    fn list(&mut self, close: &str) -> Result<Vec<Expr>, ParseError> {
        let mut out = Vec::new();
        if self.eat(close) {
            return Ok(out);
        }
        loop {
            out.push(self.expr()?);
            if self.eat(close) {
                return Ok(out);
            }
            self.expect(",")?;
        }
    }

    fn cmp(&mut self) -> Option<CmpOp> {
        let op = match self.peek() {
            Some(Tok::Sym("==")) => CmpOp::Eq,
            Some(Tok::Sym("!=")) => CmpOp::Ne,
            Some(Tok::Sym("<=")) => CmpOp::Le,
            Some(Tok::Sym(">=")) => CmpOp::Ge,
            Some(Tok::Sym("<")) => CmpOp::Lt,
            Some(Tok::Sym(">")) => CmpOp::Gt,
            _ => return None,
        };
        self.pos += 1;
        Some(op)
    }
}

/// Splits on `;`, returning `(offset, text)` for each non-empty statement.
fn split(src: &str) -> Result<Vec<(usize, &str)>, ParseError> {
    let mut out = Vec::new();
    let mut start = 0;
    for (i, c) in src.char_indices() {
        if c == ';' {
            out.push((start, &src[start..i]));
            start = i + 1;
        }
    }
    let tail = &src[start..];
    if !tail.trim().is_empty() {
        let lead = tail.len() - tail.trim_start().len();
        return err(start + lead, "statement is not terminated by `;`");
    }
    Ok(out.into_iter().filter(|(_, s)| !s.trim().is_empty()).collect())
}

/// Parses a script. Ring declarations are parsed eagerly (with `k` standing for `field`)
/// so that names can be checked: every name must be bound before use and bound once.
pub fn parse_script(src: &str, field: FieldSpec) -> Result<Script, ParseError> {
    let clean = strip_comments(src);
    let mut statements = Vec::new();
    let mut names: BTreeSet<String> = BTreeSet::new();
    let mut rings: Vec<(String, Vec<String>)> = Vec::new();
    let mut current_vars: Vec<String> = Vec::new();
    for (off, raw) in split(&clean)? {
        let lead = raw.len() - raw.trim_start().len();
        let offset = off + lead;
        let text = raw.trim().to_string();
        let toks = lex(raw, off)?;
        let mut p = Parser { toks, pos: 0, end: off + raw.len() };
        let (kw, kw_at) = p.ident()?;
        let stmt = match kw.as_str() {
            "ring" => {
                let (name, at) = p.ident()?;
                if p.done() {
                    let Some((_, vars)) = rings.iter().find(|(n, _)| *n == name) else {
                        return err(at, format!("unknown ring `{name}`"));
                    };
                    current_vars = vars.clone();
                    Stmt::Ring { name, text: None }
                } else {
                    let eq_at = p.offset();
                    p.expect("=")?;
                    if names.contains(&name) {
                        return err(at, format!("`{name}` is already bound"));
                    }
                    // The declaration is everything after `=`, handed to the ring parser.
                    let body_start = eq_at - off + 1;
                    let body = &raw[body_start..];
                    let ring = parse_ring(body, field).map_err(|e| match e {
                        liaison::Error::Syntax { pos, msg } => ParseError { pos: off + body_start + pos, msg },
                        other => ParseError { pos: off + body_start, msg: other.to_string() },
                    })?;
                    current_vars = ring.vars().to_vec();
                    names.insert(name.clone());
                    rings.push((name.clone(), current_vars.clone()));
                    Stmt::Ring { name, text: Some(body.trim().to_string()) }
                }
            }
            "ideal" | "module" | "poly" | "let" => {
                let kind = match kw.as_str() {
                    "ideal" => BindKind::Ideal,
                    "module" => BindKind::Module,
                    "poly" => BindKind::Poly,
                    _ => BindKind::Let,
                };
                let (name, at) = p.ident()?;
                p.expect("=")?;
                let expr = p.expr()?;
                if !p.done() {
                    return err(p.offset(), "trailing input");
                }
                check_names(&expr, &names, &current_vars)?;
                if names.contains(&name) || current_vars.contains(&name) {
                    return err(at, format!("`{name}` is already bound"));
                }
                names.insert(name.clone());
                Stmt::Bind { kind, name, expr }
            }
            "show" => {
                let expr = p.expr()?;
                if !p.done() {
                    return err(p.offset(), "trailing input");
                }
                check_names(&expr, &names, &current_vars)?;
                Stmt::Show(expr)
            }
            "check" => {
                let lhs = p.expr()?;
                check_names(&lhs, &names, &current_vars)?;
                let cmp = match p.cmp() {
                    Some(op) => {
                        let rhs = p.expr()?;
                        check_names(&rhs, &names, &current_vars)?;
                        Some((op, rhs))
                    }
                    None => None,
                };
                if !p.done() {
                    return err(p.offset(), "trailing input");
                }
                Stmt::Check { lhs, cmp }
            }
            other => return err(kw_at, format!("unknown statement `{other}`")),
        };
        statements.push(Statement { offset, text, stmt });
    }
    Ok(Script { statements })
}

fn check_names(e: &Expr, names: &BTreeSet<String>, vars: &[String]) -> Result<(), ParseError> {
    match e {
        Expr::Int(..) => Ok(()),
        Expr::Name(n, at) => {
            if names.contains(n) || vars.contains(n) || KEYWORDS.contains(&n.as_str()) {
                Ok(())
            } else {
                err(*at, format!("`{n}` is not bound"))
            }
        }
        Expr::Call(_, args, _) => args.iter().try_for_each(|a| check_names(a, names, vars)),
        Expr::Neg(a, _) => check_names(a, names, vars),
        Expr::Bin(_, a, b, _) => {
            check_names(a, names, vars)?;
            check_names(b, names, vars)
        }
        Expr::Matrix(rows, _) => rows.iter().flatten().try_for_each(|a| check_names(a, names, vars)),
    }
}
