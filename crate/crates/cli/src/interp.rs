//! Evaluation of parsed scripts.

use std::collections::BTreeMap;

use serde_json::json;
use thiserror::Error;

use liaison::homcore::{
    annihilator, artinian_dual, dagger, ext, fingerprint, hom_modules, resolve, syzygy_power, tensor, tor,
    trace_and_stability, transpose, BettiTable, Fingerprint, FreeModuleMap, PresentedModule, Resolution,
};
use liaison::linkage::{
    complexity, complexity_transfer_check, cone_report, eisenbud_operators, ferrand_cone, horizontal_link, link_via,
    mcm_approx, CohomOperators, ComplexityEstimate, ConeReport, MCMApprox, TransferReport, VanishingMode,
    VanishingVerdict,
};
use liaison::polycore::{parse_ring, FieldSpec, Polynomial, Ring};
use liaison::stdbasis::{is_gorenstein_artinian, krull_dim, socle_dim, vspace_dim, Ideal};

use crate::output::{self, Body, Check, OutputRecord, Provenance};
use crate::script::{BinOp, BindKind, CmpOp, Expr, Script, Stmt};

/// Settings shared by every statement.
#[derive(Debug, Clone, PartialEq)]
pub struct Flags {
    pub json: bool,
    pub bound: usize,
    pub characteristic: u32,
    pub seed: Option<u64>,
    pub deep: bool,
    pub fail_fast: bool,
}

impl Default for Flags {
    fn default() -> Self {
        Flags { json: false, bound: 8, characteristic: 32003, seed: None, deep: false, fail_fast: false }
    }
}

impl Flags {
    pub fn field(&self) -> Result<FieldSpec, liaison::Error> {
        FieldSpec::with_characteristic(self.characteristic as u64)
    }

    pub fn provenance(&self, ring: Option<&Ring>) -> Provenance {
        Provenance {
            characteristic: ring.map(|r| r.field().characteristic()).unwrap_or(self.characteristic),
            order: ring.map(|r| r.order().name()).unwrap_or("local").to_string(),
            resolution_bound: self.bound,
            window: (2, self.bound),
            seed: self.seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("{msg} (at offset {pos})")]
    Type { pos: usize, msg: String },
    #[error("{err} (at offset {pos})")]
    Algebra { pos: usize, err: liaison::Error },
}

type Eval<T> = Result<T, EvalError>;

fn type_err<T>(pos: usize, msg: impl Into<String>) -> Eval<T> {
    Err(EvalError::Type { pos, msg: msg.into() })
}

fn alg(pos: usize) -> impl FnOnce(liaison::Error) -> EvalError {
    move |err| EvalError::Algebra { pos, err }
}

/// A runtime value.
#[derive(Debug, Clone)]
pub enum Value {
    Int(i64),
    Bool(bool),
    Word(String),
    Poly(Polynomial, Ring),
    Ideal(Ideal),
    /// A list of generators, such as the output of `mingens`.
    Gens(Vec<Polynomial>, Ring),
    Matrix(FreeModuleMap),
    Module(PresentedModule),
    Betti(BettiTable, Option<bool>),
    Resolution(Box<Resolution>),
    Verdict(VanishingVerdict),
    Fingerprint(Fingerprint),
    Cone(ConeReport, Vec<usize>),
    Complexity(ComplexityEstimate),
    Operators(Box<CohomOperators>),
    Approx(Box<MCMApprox>),
    Transfer(Box<TransferReport>),
}

impl Value {
    fn type_name(&self) -> &'static str {
        match self {
            Value::Int(_) => "integer",
            Value::Bool(_) => "boolean",
            Value::Word(_) => "word",
            Value::Poly(..) => "polynomial",
            Value::Ideal(_) => "ideal",
            Value::Gens(..) => "generator list",
            Value::Matrix(_) => "matrix",
            Value::Module(_) => "module",
            Value::Betti(..) => "betti table",
            Value::Resolution(_) => "resolution",
            Value::Verdict(_) => "verdict",
            Value::Fingerprint(_) => "fingerprint",
            Value::Cone(..) => "cone report",
            Value::Complexity(_) => "complexity estimate",
            Value::Operators(_) => "operators",
            Value::Approx(_) => "MCM approximation",
            Value::Transfer(_) => "transfer report",
        }
    }

    fn ring(&self) -> Option<&Ring> {
        match self {
            Value::Poly(_, r) | Value::Gens(_, r) => Some(r),
            Value::Ideal(i) => Some(i.ring()),
            Value::Matrix(m) => Some(m.ring()),
            Value::Module(m) => Some(m.ring()),
            _ => None,
        }
    }

    pub fn body(&self) -> Body {
        match self {
            Value::Int(v) => output::value_body(json!(v), v.to_string()),
            Value::Bool(b) => output::value_body(json!(b), b.to_string()),
            Value::Word(w) => output::value_body(json!(w), w.clone()),
            Value::Poly(f, r) => {
                let s = r.format(f);
                output::value_body(json!(s), s)
            }
            Value::Ideal(i) => output::ideal_body(i, i.gens()),
            Value::Gens(g, r) => output::ideal_body(&Ideal::new(r, g.clone()), g),
            Value::Matrix(m) => output::value_body(json!(output::matrix_rows(m)), m.to_string()),
            Value::Module(m) => output::module_body(m),
            Value::Betti(b, finished) => output::betti_body(b, *finished),
            Value::Resolution(r) => output::resolution_body(r),
            Value::Verdict(v) => output::verdict_body(v),
            Value::Fingerprint(f) => output::fingerprint_body(f),
            Value::Cone(r, ranks) => output::cone_body(r, ranks),
            Value::Complexity(c) => output::complexity_body(c),
            Value::Operators(o) => operators_body(o),
            Value::Approx(a) => approx_body(a),
            Value::Transfer(t) => transfer_body(t),
        }
    }
}

fn operators_body(o: &CohomOperators) -> Body {
    let ring = o.resolution.complex.ring.clone();
    let rels: Vec<String> = o.relations.iter().map(|f| ring.format(f)).collect();
    let ops: Vec<Vec<Vec<Vec<String>>>> =
        o.ops.iter().map(|per| per.iter().map(output::matrix_rows).collect()).collect();
    Body {
        kind: "operators",
        payload: json!({
            "relations": rels,
            "betti": o.resolution.betti.betti,
            "identity_holds": o.identity_holds,
            "chain_maps": o.chain_maps,
            "iso": o.iso,
            "periodic_from": o.periodic_from(),
            "operators": ops,
        }),
        text: format!(
            "relations ({})\nbetti {:?}\nd~^2 = sum f_j t~_j: {}\nchain maps over A: {}\niso from degree 2: {:?}\nperiodic from: {}",
            rels.join(", "),
            o.resolution.betti.betti,
            o.identity_holds,
            o.chain_maps,
            o.iso,
            o.periodic_from().map(|k| k.to_string()).unwrap_or_else(|| "not detected".into())
        ),
    }
}

fn approx_body(a: &MCMApprox) -> Body {
    let gens = |m: &PresentedModule| m.minimize().num_gens();
    Body {
        kind: "mcm-approx",
        payload: json!({
            "x_gens": gens(&a.x),
            "y_gens": gens(&a.y),
            "target_gens": gens(&a.target),
            "y_betti": a.y_betti,
            "y_finite": a.y_finite,
            "x_mcm": a.x_mcm,
            "ext_bound": a.ext_bound,
            "exact": a.exact,
            "certified": a.certified(),
        }),
        text: format!(
            "0 -> Y -> X -> N -> 0 with Y betti {:?}\nY of finite projective dimension: {}\nExt^i(X, A) = 0 for 1 <= i <= {}: {}\nexact: {}\ncertified: {}",
            a.y_betti,
            a.y_finite,
            a.ext_bound,
            a.x_mcm,
            a.exact,
            a.certified()
        ),
    }
}

pub fn transfer_body(t: &TransferReport) -> Body {
    let regime = format!("{:?}", t.regime).to_lowercase();
    let est = |c: &ComplexityEstimate| json!({ "betti": c.betti.betti, "class": c.class.to_string() });
    Body {
        kind: "transfer",
        payload: json!({
            "m": est(&t.m),
            "n": est(&t.n),
            "quotient": est(&t.quotient),
            "regime": regime,
            "matches": t.matches,
            "label": VanishingVerdict::LABEL,
        }),
        text: format!(
            "cx M: {} {:?}\ncx N: {} {:?}\ncx A/q: {} {:?}\nregime {regime}; prediction holds: {}",
            t.m.class,
            t.m.betti.betti,
            t.n.class,
            t.n.betti.betti,
            t.quotient.class,
            t.quotient.betti.betti,
            t.matches.map(|b| b.to_string()).unwrap_or_else(|| "no prediction".into())
        ),
    }
}

/// Outcome of a script run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub records: Vec<OutputRecord>,
    pub failed_checks: usize,
    /// The first evaluation error, with the offending statement.
    pub error: Option<(String, EvalError)>,
}

impl RunOutcome {
    pub fn exit_code(&self) -> i32 {
        if self.error.is_some() {
            3
        } else if self.failed_checks > 0 {
            1
        } else {
            0
        }
    }
}

pub struct Interpreter {
    flags: Flags,
    field: FieldSpec,
    rings: BTreeMap<String, Ring>,
    env: BTreeMap<String, Value>,
    current: Option<Ring>,
}

impl Interpreter {
    pub fn new(flags: Flags) -> Result<Self, liaison::Error> {
        let field = flags.field()?;
        Ok(Interpreter { flags, field, rings: BTreeMap::new(), env: BTreeMap::new(), current: None })
    }

    pub fn run(&mut self, script: &Script) -> RunOutcome {
        let mut out = RunOutcome { records: Vec::new(), failed_checks: 0, error: None };
        for st in &script.statements {
            match self.exec(&st.stmt, &st.text) {
                Ok(Some(rec)) => {
                    let failed = rec.check.as_ref().is_some_and(|c| !c.pass);
                    out.records.push(rec);
                    if failed {
                        out.failed_checks += 1;
                        if self.flags.fail_fast {
                            break;
                        }
                    }
                }
                Ok(None) => {}
                Err(e) => {
                    out.error = Some((st.text.clone(), e));
                    break;
                }
            }
        }
        out
    }

    fn record(&self, body: Body, ring: Option<&Ring>, check: Option<Check>) -> OutputRecord {
        let ring = ring.or(self.current.as_ref());
        OutputRecord {
            kind: body.kind.to_string(),
            payload: body.payload,
            text: body.text,
            provenance: self.flags.provenance(ring),
            check,
        }
    }

    fn exec(&mut self, stmt: &Stmt, text: &str) -> Eval<Option<OutputRecord>> {
        match stmt {
            Stmt::Ring { name, text: Some(decl) } => {
                let ring = parse_ring(decl, self.field).map_err(alg(0))?;
                self.rings.insert(name.clone(), ring.clone());
                self.current = Some(ring);
                Ok(None)
            }
            Stmt::Ring { name, text: None } => {
                self.current = self.rings.get(name).cloned();
                Ok(None)
            }
            Stmt::Bind { kind, name, expr } => {
                let v = self.eval(expr)?;
                let v = coerce(v, *kind, expr.pos())?;
                self.env.insert(name.clone(), v);
                Ok(None)
            }
            Stmt::Show(e) => {
                let v = self.eval(e)?;
                Ok(Some(self.record(v.body(), v.ring(), None)))
            }
            Stmt::Check { lhs, cmp } => {
                let l = self.eval(lhs)?;
                let pass = match cmp {
                    None => match l {
                        Value::Bool(b) => b,
                        other => return type_err(lhs.pos(), format!("check needs a boolean, got a {}", other.type_name())),
                    },
                    Some((op, rhs)) => {
                        let r = self.eval(rhs)?;
                        compare(&l, *op, &r, rhs.pos())?
                    }
                };
                let expr = text.strip_prefix("check").unwrap_or(text).trim().to_string();
                Ok(Some(self.record(l.body(), l.ring(), Some(Check { expr, pass }))))
            }
        }
    }

    fn ring(&self, pos: usize) -> Eval<Ring> {
        match &self.current {
            Some(r) => Ok(r.clone()),
            None => type_err(pos, "no ring has been declared"),
        }
    }

    fn eval(&self, e: &Expr) -> Eval<Value> {
        match e {
            Expr::Int(v, _) => Ok(Value::Int(*v)),
            Expr::Name(n, pos) => {
                if let Some(v) = self.env.get(n) {
                    return Ok(v.clone());
                }
                if let Some(r) = &self.current {
                    if let Some(i) = r.var_index(n) {
                        return Ok(Value::Poly(r.var(i), r.clone()));
                    }
                }
                if crate::script::KEYWORDS.contains(&n.as_str()) {
                    return Ok(Value::Word(n.clone()));
                }
                type_err(*pos, format!("`{n}` is not bound in the current ring"))
            }
            Expr::Neg(a, pos) => match self.eval(a)? {
                Value::Int(v) => Ok(Value::Int(-v)),
                Value::Poly(f, r) => Ok(Value::Poly(r.neg(&f), r)),
                Value::Matrix(m) => Ok(Value::Matrix(m.neg())),
                other => type_err(*pos, format!("cannot negate a {}", other.type_name())),
            },
            Expr::Bin(op, a, b, pos) => {
                let a = self.eval(a)?;
                let b = self.eval(b)?;
                self.binary(*op, a, b, *pos)
            }
            Expr::Matrix(rows, pos) => {
                let ring = self.ring(*pos)?;
                let mut entries = Vec::new();
                for row in rows {
                    let mut r = Vec::new();
                    for x in row {
                        r.push(self.poly(x, &ring)?);
                    }
                    entries.push(r);
                }
                let cols = entries.first().map(|r| r.len()).unwrap_or(0);
                let m = FreeModuleMap::from_rows(&ring, entries.len(), cols, &entries).map_err(alg(*pos))?;
                Ok(Value::Matrix(m))
            }
            Expr::Call(name, args, pos) => self.call(name, args, *pos),
        }
    }

    fn binary(&self, op: BinOp, a: Value, b: Value, pos: usize) -> Eval<Value> {
        use Value::*;
        match (op, a, b) {
            (BinOp::Add, Int(x), Int(y)) => x.checked_add(y).map(Int).ok_or(()).or_else(|_| type_err(pos, "overflow")),
            (BinOp::Sub, Int(x), Int(y)) => x.checked_sub(y).map(Int).ok_or(()).or_else(|_| type_err(pos, "overflow")),
            (BinOp::Mul, Int(x), Int(y)) => x.checked_mul(y).map(Int).ok_or(()).or_else(|_| type_err(pos, "overflow")),
            (BinOp::Pow, Int(x), Int(y)) if y >= 0 => {
                x.checked_pow(y as u32).map(Int).ok_or(()).or_else(|_| type_err(pos, "overflow"))
            }
            (BinOp::Add, Ideal(i), Ideal(j)) => i.sum(&j).map(Ideal).map_err(alg(pos)),
            (BinOp::Mul, Ideal(i), Ideal(j)) => i.product(&j).map(Ideal).map_err(alg(pos)),
            (BinOp::Pow, Ideal(i), Int(k)) if k >= 1 => {
                let mut acc = i.clone();
                for _ in 1..k {
                    acc = acc.product(&i).map_err(alg(pos))?;
                }
                Ok(Ideal(acc))
            }
            (BinOp::Mul, Poly(f, r), Matrix(m)) | (BinOp::Mul, Matrix(m), Poly(f, r)) => {
                r.check_same(m.ring()).map_err(alg(pos))?;
                Ok(Matrix(m.scale_poly(&f)))
            }
            (BinOp::Mul, Matrix(a), Matrix(b)) => a.compose(&b).map(Matrix).map_err(alg(pos)),
            (BinOp::Add, Matrix(a), Matrix(b)) => a.add(&b).map(Matrix).map_err(alg(pos)),
            (BinOp::Sub, Matrix(a), Matrix(b)) => a.sub(&b).map(Matrix).map_err(alg(pos)),
            (op, a, b) => {
                let ring = match (a.ring(), b.ring()) {
                    (Some(r), _) | (None, Some(r)) => r.clone(),
                    _ => self.ring(pos)?,
                };
                let (f, g) = (to_poly(&a, &ring, pos)?, to_poly(&b, &ring, pos)?);
                let out = match op {
                    BinOp::Add => ring.add(&f, &g),
                    BinOp::Sub => ring.sub(&f, &g),
                    BinOp::Mul => ring.mul(&f, &g),
                    BinOp::Div => {
                        let Value::Int(d) = b else {
                            return type_err(pos, "division is only by integer literals");
                        };
                        let inv = ring.field().inv(&ring.field().from_i64(d)).map_err(alg(pos))?;
                        ring.scale(&inv, &f)
                    }
                    BinOp::Pow => {
                        let Value::Int(k) = b else {
                            return type_err(pos, "exponents must be integers");
                        };
                        if k < 0 {
                            return type_err(pos, "negative exponent");
                        }
                        ring.pow(&f, k as u32)
                    }
                };
                Ok(Poly(out, ring))
            }
        }
    }

    fn poly(&self, e: &Expr, ring: &Ring) -> Eval<Polynomial> {
        let v = self.eval(e)?;
        to_poly(&v, ring, e.pos())
    }

    fn args(&self, args: &[Expr], lo: usize, hi: usize, name: &str, pos: usize) -> Eval<Vec<Value>> {
        if args.len() < lo || args.len() > hi {
            let want = if lo == hi { lo.to_string() } else { format!("{lo} to {hi}") };
            return type_err(pos, format!("`{name}` takes {want} arguments, got {}", args.len()));
        }
        args.iter().map(|a| self.eval(a)).collect()
    }

    fn call(&self, name: &str, args: &[Expr], pos: usize) -> Eval<Value> {
        let bound = self.flags.bound;
        let at = |i: usize| args.get(i).map(|a| a.pos()).unwrap_or(pos);
        let module = |v: &Value, i: usize| as_module(v, at(i));
        let ideal = |v: &Value, i: usize| as_ideal(v, at(i));
        let int = |v: &Value, i: usize| as_int(v, at(i));
        let opt_int = |vs: &[Value], i: usize, d: usize| vs.get(i).map(|v| int(v, i)).transpose().map(|o| o.unwrap_or(d));
        match name {
            "ideal" => {
                let ring = self.ring(pos)?;
                let gens = args.iter().map(|a| self.poly(a, &ring)).collect::<Eval<Vec<_>>>()?;
                Ok(Value::Ideal(Ideal::new(&ring, gens)))
            }
            "maximal" => {
                self.args(args, 0, 0, name, pos)?;
                Ok(Value::Ideal(Ideal::maximal(&self.ring(pos)?)))
            }
            "std" => {
                let v = self.args(args, 1, 1, name, pos)?;
                let i = ideal(&v[0], 0)?;
                Ok(Value::Ideal(Ideal::new(i.ring(), i.std_basis().to_vec())))
            }
            "nf" => {
                let v = self.args(args, 2, 2, name, pos)?;
                let i = ideal(&v[1], 1)?;
                let f = to_poly(&v[0], i.ring(), at(0))?;
                Ok(Value::Poly(i.normal_form(&f), i.ring().clone()))
            }
            "member" => {
                let v = self.args(args, 2, 2, name, pos)?;
                let i = ideal(&v[1], 1)?;
                let f = to_poly(&v[0], i.ring(), at(0))?;
                Ok(Value::Bool(i.contains(&f)))
            }
            "colon" => {
                let v = self.args(args, 2, 2, name, pos)?;
                let i = ideal(&v[0], 0)?;
                let j = match &v[1] {
                    Value::Ideal(_) | Value::Gens(..) => ideal(&v[1], 1)?,
                    other => Ideal::new(i.ring(), vec![to_poly(other, i.ring(), at(1))?]),
                };
                i.colon(&j).map(Value::Ideal).map_err(alg(pos))
            }
            "intersect" => {
                let v = self.args(args, 2, 2, name, pos)?;
                ideal(&v[0], 0)?.intersect(&ideal(&v[1], 1)?).map(Value::Ideal).map_err(alg(pos))
            }
            "mingens" => {
                let v = self.args(args, 1, 1, name, pos)?;
                let i = ideal(&v[0], 0)?;
                let g = i.mingens().map_err(alg(pos))?;
                Ok(Value::Gens(g, i.ring().clone()))
            }
            "contained" => {
                let v = self.args(args, 2, 2, name, pos)?;
                let i = ideal(&v[0], 0)?;
                match &v[1] {
                    Value::Int(k) if *k >= 0 => Ok(Value::Bool(i.contained_in_power(*k as u32))),
                    other => Ok(Value::Bool(i.is_subset_of(&ideal(other, 1)?))),
                }
            }
            "dim" => {
                let v = self.args(args, 0, 1, name, pos)?;
                let ring = match v.first() {
                    Some(x) => ideal(x, 0)?.quotient_ring().map_err(alg(pos))?,
                    None => self.ring(pos)?,
                };
                Ok(Value::Int(krull_dim(&ring) as i64))
            }
            "vdim" => {
                let v = self.args(args, 0, 1, name, pos)?;
                let n = match v.first() {
                    Some(x) => ideal(x, 0)?.colength(),
                    None => vspace_dim(&*self.ring(pos)?),
                };
                n.map(|n| Value::Int(n as i64)).map_err(alg(pos))
            }
            "socle" => {
                self.args(args, 0, 0, name, pos)?;
                socle_dim(&self.ring(pos)?).map(|n| Value::Int(n as i64)).map_err(alg(pos))
            }
            "gorenstein" => {
                self.args(args, 0, 0, name, pos)?;
                is_gorenstein_artinian(&self.ring(pos)?).map(Value::Bool).map_err(alg(pos))
            }
            "coker" => {
                let v = self.args(args, 1, 1, name, pos)?;
                match &v[0] {
                    Value::Matrix(m) => Ok(Value::Module(PresentedModule::coker(m.clone()))),
                    other => Ok(Value::Module(PresentedModule::cyclic(&ideal(other, 0)?))),
                }
            }
            "quotient" | "cyclic" => {
                let v = self.args(args, 1, 1, name, pos)?;
                Ok(Value::Module(PresentedModule::cyclic(&ideal(&v[0], 0)?)))
            }
            "free" => {
                let v = self.args(args, 1, 1, name, pos)?;
                let n = int(&v[0], 0)?;
                Ok(Value::Module(PresentedModule::free(&self.ring(pos)?, n)))
            }
            "residue" => {
                self.args(args, 0, 0, name, pos)?;
                Ok(Value::Module(PresentedModule::residue_field(&self.ring(pos)?)))
            }
            "resolve" => {
                let v = self.args(args, 1, 2, name, pos)?;
                let n = opt_int(&v, 1, bound)?;
                Ok(Value::Resolution(Box::new(resolve(&module(&v[0], 0)?, n))))
            }
            "betti" => {
                let v = self.args(args, 1, 2, name, pos)?;
                let n = opt_int(&v, 1, bound)?;
                let r = resolve(&module(&v[0], 0)?, n);
                Ok(Value::Betti(r.betti, Some(r.finished)))
            }
            "transpose" => {
                let v = self.args(args, 1, 1, name, pos)?;
                match &v[0] {
                    Value::Matrix(m) => Ok(Value::Matrix(m.transpose())),
                    other => Ok(Value::Module(transpose(&module(other, 0)?))),
                }
            }
            "omega" => {
                let v = self.args(args, 1, 2, name, pos)?;
                let k = opt_int(&v, 1, 1)?;
                Ok(Value::Module(syzygy_power(&module(&v[0], 0)?, k)))
            }
            "hom" | "tensor" => {
                let v = self.args(args, 2, 2, name, pos)?;
                let (m, n) = (module(&v[0], 0)?, module(&v[1], 1)?);
                let r = if name == "hom" { hom_modules(&m, &n) } else { tensor(&m, &n) };
                r.map(Value::Module).map_err(alg(pos))
            }
            "ext" | "tor" => {
                let v = self.args(args, 3, 3, name, pos)?;
                let (m, n, i) = (module(&v[0], 0)?, module(&v[1], 1)?, int(&v[2], 2)?);
                let r = if name == "ext" { ext(&m, &n, i) } else { tor(&m, &n, i) };
                r.map(Value::Module).map_err(alg(pos))
            }
            "dagger" => {
                let v = self.args(args, 1, 1, name, pos)?;
                dagger(&module(&v[0], 0)?).map(Value::Module).map_err(alg(pos))
            }
            "dual" => {
                let v = self.args(args, 1, 1, name, pos)?;
                artinian_dual(&module(&v[0], 0)?).map(Value::Module).map_err(alg(pos))
            }
            "ann" => {
                let v = self.args(args, 1, 1, name, pos)?;
                Ok(Value::Ideal(annihilator(&module(&v[0], 0)?)))
            }
            "trace" | "stable" => {
                let v = self.args(args, 1, 1, name, pos)?;
                let t = trace_and_stability(&module(&v[0], 0)?).map_err(alg(pos))?;
                Ok(if name == "trace" { Value::Ideal(t.trace) } else { Value::Bool(t.stable) })
            }
            "fingerprint" => {
                let v = self.args(args, 1, 1, name, pos)?;
                Ok(Value::Fingerprint(fingerprint(&module(&v[0], 0)?, bound, 6)))
            }
            "length" => {
                let v = self.args(args, 1, 1, name, pos)?;
                let m = module(&v[0], 0)?;
                m.length().map(|n| Value::Int(n as i64)).map_err(alg(pos))
            }
            "numgens" | "count" => {
                let v = self.args(args, 1, 1, name, pos)?;
                match &v[0] {
                    Value::Gens(g, _) => Ok(Value::Int(g.len() as i64)),
                    Value::Ideal(i) => Ok(Value::Int(i.gens().len() as i64)),
                    Value::Module(m) => Ok(Value::Int(m.minimize().num_gens() as i64)),
                    other => type_err(at(0), format!("cannot count a {}", other.type_name())),
                }
            }
            "iszero" => {
                let v = self.args(args, 1, 1, name, pos)?;
                match &v[0] {
                    Value::Ideal(i) => Ok(Value::Bool(i.is_zero())),
                    Value::Matrix(m) => Ok(Value::Bool(m.is_zero())),
                    other => Ok(Value::Bool(module(other, 0)?.is_zero())),
                }
            }
            "link" => {
                let v = self.args(args, 1, 2, name, pos)?;
                let m = module(&v[0], 0)?;
                match v.get(1) {
                    None => horizontal_link(&m).map(Value::Module).map_err(alg(pos)),
                    Some(q) => link_via(&m, &ideal(q, 1)?).map(|d| Value::Module(d.n)).map_err(alg(pos)),
                }
            }
            "cone" | "mcmapprox" => {
                let v = self.args(args, 2, 3, name, pos)?;
                let (m, q) = (module(&v[0], 0)?, ideal(&v[1], 1)?);
                let b = opt_int(&v, 2, bound)?;
                let cone = ferrand_cone(&m, &q, b).map_err(alg(pos))?;
                if name == "cone" {
                    let ranks: Vec<usize> = (-1..=cone.c.hi()).map(|i| cone.c.rank(i)).collect();
                    cone_report(&cone).map(|r| Value::Cone(r, ranks)).map_err(alg(pos))
                } else {
                    mcm_approx(&cone, b).map(|a| Value::Approx(Box::new(a))).map_err(alg(pos))
                }
            }
            "cx" => {
                let v = self.args(args, 1, 2, name, pos)?;
                let b = opt_int(&v, 1, bound)?;
                complexity(&module(&v[0], 0)?, b).map(Value::Complexity).map_err(alg(pos))
            }
            "eisenbud" => {
                let v = self.args(args, 1, 2, name, pos)?;
                let b = opt_int(&v, 1, bound)?;
                eisenbud_operators(&module(&v[0], 0)?, b)
                    .map(|o| Value::Operators(Box::new(o)))
                    .map_err(alg(pos))
            }
            "transfer" => {
                let v = self.args(args, 2, 3, name, pos)?;
                let (m, q) = (module(&v[0], 0)?, ideal(&v[1], 1)?);
                let b = opt_int(&v, 2, bound)?;
                let d = link_via(&m, &q).map_err(alg(pos))?;
                complexity_transfer_check(&d, b).map(|t| Value::Transfer(Box::new(t))).map_err(alg(pos))
            }
            "verdict" => {
                let v = self.args(args, 3, 5, name, pos)?;
                let (first, second) = (module(&v[0], 0)?, module(&v[1], 1)?);
                let mode = match &v[2] {
                    Value::Word(w) if w == "ext_from" => VanishingMode::ExtFrom,
                    Value::Word(w) if w == "ext_into" => VanishingMode::ExtInto,
                    Value::Word(w) if w == "tor" => VanishingMode::Tor,
                    _ => return type_err(at(2), "mode must be ext_from, ext_into or tor"),
                };
                let w0 = opt_int(&v, 3, krull_dim(first.ring()) + 2)?;
                let w1 = opt_int(&v, 4, bound)?;
                liaison::linkage::vanishing_verdict(&first, &second, mode, (w0, w1))
                    .map(Value::Verdict)
                    .map_err(alg(pos))
            }
            _ => type_err(pos, format!("unknown function `{name}`")),
        }
    }
}

fn to_poly(v: &Value, ring: &Ring, pos: usize) -> Eval<Polynomial> {
    match v {
        Value::Int(k) => Ok(ring.int(*k)),
        Value::Poly(f, r) => {
            ring.check_same(r).map_err(alg(pos))?;
            Ok(f.clone())
        }
        other => type_err(pos, format!("expected a polynomial, got a {}", other.type_name())),
    }
}

fn as_int(v: &Value, pos: usize) -> Eval<usize> {
    match v {
        Value::Int(k) if *k >= 0 => Ok(*k as usize),
        other => type_err(pos, format!("expected a nonnegative integer, got a {}", other.type_name())),
    }
}

fn as_ideal(v: &Value, pos: usize) -> Eval<Ideal> {
    match v {
        Value::Ideal(i) => Ok(i.clone()),
        Value::Gens(g, r) => Ok(Ideal::new(r, g.clone())),
        Value::Poly(f, r) => Ok(Ideal::new(r, vec![f.clone()])),
        other => type_err(pos, format!("expected an ideal, got a {}", other.type_name())),
    }
}

fn as_module(v: &Value, pos: usize) -> Eval<PresentedModule> {
    match v {
        Value::Module(m) => Ok(m.clone()),
        Value::Matrix(m) => Ok(PresentedModule::coker(m.clone())),
        other => type_err(pos, format!("expected a module, got a {}", other.type_name())),
    }
}

/// Applies the declared kind of a binding.
fn coerce(v: Value, kind: BindKind, pos: usize) -> Eval<Value> {
    match (kind, v) {
        (BindKind::Let, v) => Ok(v),
        (BindKind::Ideal, v) => as_ideal(&v, pos).map(Value::Ideal),
        (BindKind::Module, v) => as_module(&v, pos).map(Value::Module),
        (BindKind::Poly, v @ Value::Poly(..)) => Ok(v),
        (BindKind::Poly, Value::Int(k)) => Ok(Value::Int(k)),
        (BindKind::Poly, other) => type_err(pos, format!("expected a polynomial, got a {}", other.type_name())),
    }
}

fn ord_check(x: i64, op: CmpOp, y: i64) -> bool {
    match op {
        CmpOp::Eq => x == y,
        CmpOp::Ne => x != y,
        CmpOp::Le => x <= y,
        CmpOp::Ge => x >= y,
        CmpOp::Lt => x < y,
        CmpOp::Gt => x > y,
    }
}

fn count(v: &Value) -> Option<i64> {
    match v {
        Value::Int(k) => Some(*k),
        Value::Gens(g, _) => Some(g.len() as i64),
        _ => None,
    }
}

/// Comparison semantics: counts and integers numerically, ideals by containment, modules
/// by fingerprint, polynomials by equality in the ring.
fn compare(l: &Value, op: CmpOp, r: &Value, pos: usize) -> Eval<bool> {
    if let (Some(x), Some(y)) = (count(l), count(r)) {
        return Ok(ord_check(x, op, y));
    }
    let eq_only = |b: bool| match op {
        CmpOp::Eq => Ok(b),
        CmpOp::Ne => Ok(!b),
        _ => type_err(pos, format!("`{}` is not defined here", op.symbol())),
    };
    match (l, r) {
        (Value::Bool(a), Value::Bool(b)) => eq_only(a == b),
        (Value::Word(a), Value::Word(b)) => eq_only(a == b),
        (Value::Ideal(_) | Value::Gens(..), Value::Ideal(_) | Value::Gens(..)) => {
            let (i, j) = (as_ideal(l, pos)?, as_ideal(r, pos)?);
            i.ring().check_same(j.ring()).map_err(alg(pos))?;
            let (ij, ji) = (i.is_subset_of(&j), j.is_subset_of(&i));
            Ok(match op {
                CmpOp::Eq => ij && ji,
                CmpOp::Ne => !(ij && ji),
                CmpOp::Le => ij,
                CmpOp::Ge => ji,
                CmpOp::Lt => ij && !ji,
                CmpOp::Gt => ji && !ij,
            })
        }
        (Value::Module(a), Value::Module(b)) => {
            a.check_same_ring(b).map_err(alg(pos))?;
            eq_only(fingerprint(a, 4, 6) == fingerprint(b, 4, 6))
        }
        (Value::Fingerprint(a), Value::Fingerprint(b)) => eq_only(a == b),
        (Value::Poly(..) | Value::Int(_), Value::Poly(..) | Value::Int(_)) => {
            let ring = l.ring().or(r.ring()).expect("one side is a polynomial").clone();
            let d = ring.sub(&to_poly(l, &ring, pos)?, &to_poly(r, &ring, pos)?);
            eq_only(Ideal::zero(&ring).contains(&d))
        }
        (Value::Betti(a, _), Value::Betti(b, _)) => eq_only(a.betti == b.betti),
        (Value::Complexity(a), Value::Complexity(b)) => eq_only(a.class == b.class),
        (Value::Matrix(a), Value::Matrix(b)) => {
            eq_only(a.rows() == b.rows() && a.cols() == b.cols() && a.sub(b).map(|d| d.is_zero()).unwrap_or(false))
        }
        _ => type_err(pos, format!("cannot compare a {} with a {}", l.type_name(), r.type_name())),
    }
}
