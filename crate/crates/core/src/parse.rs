//! Text formats: polynomial expressions and session files.
//!
//! ```text
//! ring Q[x,y,z];            # or: ring Fp(7)[x,y,z];
//! poly g = x^2 - y*z;
//! ideal I = x*y, g, (x - 1)^3;
//! task gb I order=lex;
//! task verify theorem1 d=2;
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::poly::Polynomial;
use crate::ring::{Ring, RingSpec};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Decimal(String),
    Ident(String),
    Sym(char),
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let tok = if i + 1 < chars.len() && chars[i] == '.' && chars[i + 1].is_ascii_digit() {
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                Tok::Decimal(chars[start..i].iter().collect())
            } else {
                let s: String = chars[start..i].iter().collect();
                Tok::Int(s.parse().expect("digits"))
            };
            col += i - start;
            out.push(Token { tok, line: l0, col: c0 });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            col += i - start;
            out.push(Token {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                line: l0,
                col: c0,
            });
            continue;
        }
        if "+-*/^()[],;=".contains(c) {
            out.push(Token {
                tok: Tok::Sym(c),
                line: l0,
                col: c0,
            });
            i += 1;
            col += 1;
            continue;
        }
        return Err(Error::parse(line, col, format!("unexpected character `{c}`")));
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    ring: Option<Ring>,
    polys: BTreeMap<String, Polynomial>,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, t: &Token, msg: impl Into<String>) -> Result<T> {
        Err(Error::parse(t.line, t.col, msg))
    }

    fn is_sym(&self, c: char) -> bool {
        self.peek().tok == Tok::Sym(c)
    }

    fn expect_sym(&mut self, c: char) -> Result<()> {
        let t = self.next();
        if t.tok == Tok::Sym(c) {
            Ok(())
        } else {
            self.err(&t, format!("expected `{c}`, found {}", describe(&t.tok)))
        }
    }

    fn ident(&mut self) -> Result<(String, Token)> {
        let t = self.next();
        match &t.tok {
            Tok::Ident(s) => Ok((s.clone(), t.clone())),
            other => self.err(&t, format!("expected identifier, found {}", describe(other))),
        }
    }

    fn ring(&self) -> &Ring {
        self.ring.as_ref().expect("ring set before expressions")
    }

    // expr := term (('+'|'-') term)*
    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            if self.is_sym('+') {
                self.next();
                acc = &acc + &self.term()?;
            } else if self.is_sym('-') {
                self.next();
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    // term := unary (('*'|'/') unary)*
    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        loop {
            if self.is_sym('*') {
                self.next();
                acc = &acc * &self.unary()?;
            } else if self.is_sym('/') {
                self.next();
                let at = self.peek().clone();
                let d = self.unary()?;
                if !d.is_constant() {
                    return self.err(&at, "division is only allowed by a constant");
                }
                let Some(inv) = d.leading_coeff().and_then(|c| d.field().inv(c)) else {
                    return self.err(&at, "division by zero");
                };
                acc = acc.scale(&inv);
            } else if matches!(self.peek().tok, Tok::Ident(_) | Tok::Int(_)) || self.is_sym('(') {
                let t = self.peek().clone();
                return self.err(&t, "implicit multiplication is not allowed; use `*`");
            } else {
                return Ok(acc);
            }
        }
    }

    // unary := '-' unary | power
    fn unary(&mut self) -> Result<Polynomial> {
        if self.is_sym('-') {
            self.next();
            return Ok(-self.unary()?);
        }
        self.power()
    }

    // power := atom ('^' INT)?
    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if !self.is_sym('^') {
            return Ok(base);
        }
        self.next();
        let t = self.next();
        match &t.tok {
            Tok::Int(n) => match n.to_u32() {
                Some(e) if e <= u16::MAX as u32 => Ok(base.pow(e)),
                _ => self.err(&t, "exponent too large"),
            },
            Tok::Sym('-') => self.err(&t, "malformed exponent: must be non-negative"),
            Tok::Decimal(_) => self.err(&t, "malformed exponent: must be an integer"),
            other => self.err(&t, format!("malformed exponent: found {}", describe(other))),
        }
    }

    // atom := INT | IDENT | '(' expr ')'
    fn atom(&mut self) -> Result<Polynomial> {
        let t = self.next();
        match &t.tok {
            Tok::Int(n) => Ok(Polynomial::constant(self.ring(), self.ring().field().from_bigint(n))),
            Tok::Decimal(_) => self.err(&t, "decimal literals are not supported; write a fraction"),
            Tok::Ident(name) => {
                if let Some(i) = self.ring().var_index(name) {
                    return Ok(Polynomial::variable(self.ring(), i));
                }
                if let Some(p) = self.polys.get(name) {
                    return Ok(p.clone());
                }
                self.err(&t, format!("unknown identifier `{name}`"))
            }
            Tok::Sym('(') => {
                let e = self.expr()?;
                let close = self.next();
                if close.tok != Tok::Sym(')') {
                    return self.err(&close, "unbalanced parentheses: expected `)`");
                }
                Ok(e)
            }
            Tok::Sym(')') => self.err(&t, "unbalanced parentheses: unexpected `)`"),
            other => self.err(&t, format!("expected a term, found {}", describe(other))),
        }
    }

    fn expect_end(&mut self) -> Result<()> {
        let t = self.next();
        match t.tok {
            Tok::Eof => Ok(()),
            Tok::Sym(')') => self.err(&t, "unbalanced parentheses: unexpected `)`"),
            ref other => self.err(&t, format!("unexpected {}", describe(other))),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(n) => format!("integer `{n}`"),
        Tok::Decimal(s) => format!("decimal `{s}`"),
        Tok::Ident(s) => format!("identifier `{s}`"),
        Tok::Sym(c) => format!("`{c}`"),
        Tok::Eof => "end of input".into(),
    }
}

/// Parses a polynomial over `ring`. Multiplication must be explicit (`2*x`).
pub fn parse_polynomial(text: &str, ring: &Ring) -> Result<Polynomial> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        ring: Some(ring.clone()),
        polys: BTreeMap::new(),
    };
    let e = p.expr()?;
    p.expect_end()?;
    Ok(e)
}

/// Parses a comma-separated list of polynomials.
pub fn parse_polynomial_list(text: &str, ring: &Ring) -> Result<Vec<Polynomial>> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        ring: Some(ring.clone()),
        polys: BTreeMap::new(),
    };
    let mut out = vec![p.expr()?];
    while p.is_sym(',') {
        p.next();
        out.push(p.expr()?);
    }
    p.expect_end()?;
    Ok(out)
}

/// A `task` directive: a verb, positional words, and `key=value` parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Task {
    pub name: String,
    pub args: Vec<String>,
    pub params: BTreeMap<String, String>,
    pub line: usize,
}

pub const TASK_NAMES: &[&str] = &[
    "verify",
    "gb",
    "nf",
    "member",
    "radical_member",
    "equal",
    "dim",
    "intersect",
    "colon",
    "eliminate",
    "cert",
];

#[derive(Clone, Debug)]
pub struct SessionFile {
    pub ring: Ring,
    pub ideals: BTreeMap<String, Vec<Polynomial>>,
    pub polys: BTreeMap<String, Polynomial>,
    /// Declaration order, for rendering.
    order: Vec<(DeclKind, String)>,
    pub tasks: Vec<Task>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum DeclKind {
    Ideal,
    Poly,
}

pub fn parse_session(text: &str) -> Result<SessionFile> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        ring: None,
        polys: BTreeMap::new(),
    };
    let mut ideals = BTreeMap::new();
    let mut order = Vec::new();
    let mut tasks = Vec::new();
    loop {
        let head = p.next();
        let kw = match &head.tok {
            Tok::Eof => break,
            Tok::Ident(k) => k.clone(),
            other => return p.err(&head, format!("expected a declaration, found {}", describe(other))),
        };
        match kw.as_str() {
            "ring" => {
                if p.ring.is_some() {
                    return p.err(&head, "ring redeclared; a session has a single ring");
                }
                let (fname, ft) = p.ident()?;
                let field = match fname.as_str() {
                    "Q" | "QQ" => FieldSpec::Rationals,
                    "Fp" | "GF" => {
                        p.expect_sym('(')?;
                        let t = p.next();
                        let Tok::Int(n) = &t.tok else {
                            return p.err(&t, "expected prime modulus");
                        };
                        let Some(n) = n.to_u64() else {
                            return p.err(&t, "modulus too large");
                        };
                        let f = FieldSpec::prime(n).map_err(|e| Error::parse(t.line, t.col, e.to_string()))?;
                        p.expect_sym(')')?;
                        f
                    }
                    _ => return p.err(&ft, format!("unknown field `{fname}`")),
                };
                p.expect_sym('[')?;
                let mut vars = vec![p.ident()?.0];
                while p.is_sym(',') {
                    p.next();
                    vars.push(p.ident()?.0);
                }
                p.expect_sym(']')?;
                p.expect_sym(';')?;
                p.ring = Some(RingSpec::with_vars(&vars, field).map_err(|e| Error::parse(head.line, head.col, e.to_string()))?);
            }
            "ideal" | "poly" => {
                if p.ring.is_none() {
                    return p.err(&head, "missing ring declaration before first use");
                }
                let (name, nt) = p.ident()?;
                if ideals.contains_key(&name) || p.polys.contains_key(&name) {
                    return p.err(&nt, format!("`{name}` redeclared"));
                }
                if p.ring().var_index(&name).is_some() {
                    return p.err(&nt, format!("`{name}` shadows a ring variable"));
                }
                p.expect_sym('=')?;
                if kw == "poly" {
                    let e = p.expr()?;
                    p.polys.insert(name.clone(), e);
                    order.push((DeclKind::Poly, name));
                } else {
                    let mut gens = vec![p.expr()?];
                    while p.is_sym(',') {
                        p.next();
                        gens.push(p.expr()?);
                    }
                    ideals.insert(name.clone(), gens);
                    order.push((DeclKind::Ideal, name));
                }
                p.expect_sym(';')?;
            }
            "task" => {
                let (name, nt) = p.ident()?;
                if !TASK_NAMES.contains(&name.as_str()) {
                    return p.err(&nt, format!("unknown task `{name}`"));
                }
                let mut args = Vec::new();
                let mut params = BTreeMap::new();
                while !p.is_sym(';') {
                    let t = p.next();
                    let word = match &t.tok {
                        Tok::Ident(s) => s.clone(),
                        Tok::Int(n) => n.to_string(),
                        other => return p.err(&t, format!("unexpected {} in task", describe(other))),
                    };
                    if p.is_sym('=') {
                        p.next();
                        let v = p.next();
                        let val = match &v.tok {
                            Tok::Ident(s) => s.clone(),
                            Tok::Int(n) => n.to_string(),
                            other => return p.err(&v, format!("unexpected {} as parameter value", describe(other))),
                        };
                        params.insert(word, val);
                    } else {
                        args.push(word);
                    }
                }
                p.expect_sym(';')?;
                tasks.push(Task {
                    name,
                    args,
                    params,
                    line: head.line,
                });
            }
            other => return p.err(&head, format!("unknown declaration `{other}`")),
        }
    }
    let polys = std::mem::take(&mut p.polys);
    let Some(ring) = p.ring else {
        return Err(Error::parse(1, 1, "missing ring declaration"));
    };
    for t in &tasks {
        for (k, a) in t.args.iter().enumerate() {
            // `eliminate I x y` names ring variables after the ideal
            let is_var = t.name == "eliminate" && k > 0 && ring.var_index(a).is_some();
            if t.name != "verify" && !is_var && !ideals.contains_key(a) && !polys.contains_key(a) {
                return Err(Error::parse(t.line, 1, format!("task `{}` refers to undeclared `{a}`", t.name)));
            }
        }
    }
    Ok(SessionFile {
        ring,
        ideals,
        polys,
        order,
        tasks,
    })
}

/// Comma-separated generator list.
pub fn render_ideal(gens: &[Polynomial]) -> String {
    if gens.is_empty() {
        return "0".into();
    }
    gens.iter().map(Polynomial::render).collect::<Vec<_>>().join(", ")
}

pub fn render_ring(ring: &RingSpec) -> String {
    let field = match ring.field() {
        FieldSpec::Rationals => "Q".to_string(),
        FieldSpec::PrimeField(p) => format!("Fp({p})"),
    };
    format!("ring {}[{}];", field, ring.vars().join(","))
}

impl SessionFile {
    pub fn new(ring: Ring) -> Self {
        SessionFile {
            ring,
            ideals: BTreeMap::new(),
            polys: BTreeMap::new(),
            order: Vec::new(),
            tasks: Vec::new(),
        }
    }

    pub fn add_ideal(&mut self, name: &str, gens: Vec<Polynomial>) {
        if self.ideals.insert(name.to_string(), gens).is_none() {
            self.order.push((DeclKind::Ideal, name.to_string()));
        }
    }

    pub fn add_poly(&mut self, name: &str, p: Polynomial) {
        if self.polys.insert(name.to_string(), p).is_none() {
            self.order.push((DeclKind::Poly, name.to_string()));
        }
    }

    pub fn render(&self) -> String {
        let mut out = render_ring(&self.ring);
        out.push('\n');
        for (kind, name) in &self.order {
            match kind {
                DeclKind::Poly => writeln!(out, "poly {name} = {};", self.polys[name].render()),
                DeclKind::Ideal => writeln!(out, "ideal {name} = {};", render_ideal(&self.ideals[name])),
            }
            .unwrap();
        }
        for t in &self.tasks {
            out.push_str("task ");
            out.push_str(&t.name);
            for a in &t.args {
                out.push(' ');
                out.push_str(a);
            }
            for (k, v) in &t.params {
                write!(out, " {k}={v}").unwrap();
            }
            out.push_str(";\n");
        }
        out
    }
}
