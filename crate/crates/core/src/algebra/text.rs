//! Infix parsing and the JSON mirror of the canonical text format.
//!
//! Accepted syntax: integers, variables and previously defined names,
//! `r5` for √5, binary `+ - * / ^`, unary `+ -`, and parentheses. Exponents
//! are nonnegative integer literals. Division is allowed by anything that is
//! invertible over the chosen denominator basis, or that divides exactly.
//!
//! Definition files hold statements `name = expr;` with `#` line comments.

use std::collections::HashMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::error::AlgebraError;
use super::golden::{fmt_rat, Golden, Rat};
use super::locpoly::{Basis, DenomBasis, LocPoly};
use super::poly::Poly;
use super::ring::{Mono, Ring, VarRing};

/// Named values available to the parser besides ring variables.
pub type Env = HashMap<String, LocPoly>;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, AlgebraError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = src[start..i].parse().expect("digits");
            out.push((start, Tok::Num(n)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(src[start..i].to_string())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(AlgebraError::Parse { pos: i, msg: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    basis: &'a Basis,
    env: &'a Env,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, AlgebraError> {
        Err(AlgebraError::Parse { pos: self.pos(), msg: msg.into() })
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<LocPoly, AlgebraError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.try_add(&self.term()?)?;
            } else if self.eat('-') {
                acc = acc.try_sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<LocPoly, AlgebraError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.try_mul(&self.unary()?)?;
            } else if self.eat('/') {
                let pos = self.pos();
                let d = self.unary()?;
                acc = divide(&acc, &d).map_err(|e| match e {
                    AlgebraError::Parse { .. } => e,
                    other => AlgebraError::Parse { pos, msg: other.to_string() },
                })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<LocPoly, AlgebraError> {
        if self.eat('-') {
            return Ok(self.unary()?.scale(&Golden::from_int(-1)));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<LocPoly, AlgebraError> {
        let base = self.atom()?;
        if self.eat('^') {
            let e = match self.peek() {
                Some(Tok::Num(n)) => n.clone(),
                _ => return self.err("exponent must be a nonnegative integer"),
            };
            self.at += 1;
            let e: u32 = e.try_into().or_else(|_| self.err("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<LocPoly, AlgebraError> {
        let ring = self.basis.ring().clone();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.at += 1;
                Ok(LocPoly::constant(self.basis, Golden::from_bigint(n)))
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                if let Some(i) = ring.index_of(&name) {
                    Ok(LocPoly::from_poly(Poly::var_at(&ring, i), self.basis))
                } else if let Some(v) = self.env.get(&name) {
                    Ok(v.clone())
                } else if name == "r5" {
                    Ok(LocPoly::constant(self.basis, Golden::sqrt5()))
                } else {
                    self.at -= 1;
                    self.err(format!("unknown identifier `{name}`"))
                }
            }
            Some(Tok::Op('(')) => {
                self.at += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(v)
            }
            _ => self.err("expected a number, identifier or `(`"),
        }
    }
}

fn divide(a: &LocPoly, d: &LocPoly) -> Result<LocPoly, AlgebraError> {
    if d.is_zero() {
        return Err(AlgebraError::DivisionByZero);
    }
    if let Ok(inv) = d.try_inverse() {
        return a.try_mul(&inv);
    }
    let (Some(pa), Some(pd)) = (a.as_poly(), d.as_poly()) else {
        return Err(AlgebraError::NotInvertible(d.to_string()));
    };
    match pa.div_exact(pd)? {
        Ok(q) => Ok(LocPoly::from_poly(q, a.basis())),
        Err(f) => Err(AlgebraError::NotDivisible(f.obstruction)),
    }
}

/// Parses an expression as an element localized at `basis`.
pub fn parse_loc(src: &str, basis: &Basis, env: &Env) -> Result<LocPoly, AlgebraError> {
    let toks = tokenize(src)?;
    let mut p = Parser { toks, at: 0, end: src.len(), basis, env };
    let v = p.expr()?;
    if p.at != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(v)
}

/// Parses a polynomial in `ring`.
pub fn parse_poly(src: &str, ring: &Ring) -> Result<Poly, AlgebraError> {
    parse_poly_with(src, ring, &Env::new())
}

pub fn parse_poly_with(src: &str, ring: &Ring, env: &Env) -> Result<Poly, AlgebraError> {
    let v = parse_loc(src, &DenomBasis::trivial(ring), env)?;
    v.as_poly().cloned().ok_or_else(|| AlgebraError::NotDivisible(v.to_string()))
}

/// Splits a definition file into `(name, expression)` pairs.
pub fn split_defs(src: &str) -> Result<Vec<(String, String)>, AlgebraError> {
    let mut clean = String::new();
    for line in src.lines() {
        let line = line.split('#').next().unwrap_or("");
        clean.push_str(line);
        clean.push('\n');
    }
    let mut out = Vec::new();
    let mut offset = 0;
    for stmt in clean.split(';') {
        let trimmed = stmt.trim();
        if !trimmed.is_empty() {
            let Some((name, body)) = trimmed.split_once('=') else {
                return Err(AlgebraError::Parse { pos: offset, msg: "expected `name = expr;`".into() });
            };
            out.push((name.trim().to_string(), body.trim().to_string()));
        }
        offset += stmt.len() + 1;
    }
    Ok(out)
}

/// Evaluates the statements of a definition file in order; later
/// statements may refer to earlier names. Returns them in file order.
pub fn parse_defs(src: &str, basis: &Basis, env: &mut Env) -> Result<Vec<(String, LocPoly)>, AlgebraError> {
    let mut out = Vec::new();
    for (name, body) in split_defs(src)? {
        let v = parse_loc(&body, basis, env).map_err(|e| match e {
            AlgebraError::Parse { pos, msg } => AlgebraError::Parse { pos, msg: format!("in `{name}`: {msg}") },
            other => other,
        })?;
        env.insert(name.clone(), v.clone());
        out.push((name, v));
    }
    Ok(out)
}

/// JSON mirror of the canonical text form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub ring: Vec<String>,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub a: String,
    pub b: String,
}

impl PolyJson {
    pub fn of(p: &Poly) -> PolyJson {
        let n = p.ring().nvars();
        PolyJson {
            ring: p.ring().names().to_vec(),
            terms: p
                .terms()
                .iter()
                .map(|(m, c)| TermJson { exp: m.exps(n), a: fmt_rat(&c.a), b: fmt_rat(&c.b) })
                .collect(),
        }
    }

    pub fn to_poly(&self) -> Result<Poly, AlgebraError> {
        let ring = VarRing::new(&self.ring)?;
        let parse = |s: &str| -> Result<Rat, AlgebraError> {
            s.parse::<Rat>().map_err(|_| AlgebraError::Parse { pos: 0, msg: format!("bad rational `{s}`") })
        };
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            if t.exp.len() != ring.nvars() {
                return Err(AlgebraError::ArityMismatch { expected: ring.nvars(), found: t.exp.len() });
            }
            terms.push((Mono::from_exps(&t.exp), Golden::new(parse(&t.a)?, parse(&t.b)?)));
        }
        Ok(Poly::from_terms(&ring, terms))
    }
}

pub fn to_json(p: &Poly) -> String {
    serde_json::to_string(&PolyJson::of(p)).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Ring {
        VarRing::of(&["u1", "u2"])
    }

    #[test]
    fn parses_and_prints_canonically() {
        let r = ring();
        let p = parse_poly("(u1 + r5*u2)^2", &r).unwrap();
        assert_eq!(p.canonical(), "u1^2+2*r5*u1*u2+5*u2^2");
        let q = parse_poly("1/(2^5*3^2)*(3*7*u1*u2 + 2*u2^7)", &r).unwrap();
        assert_eq!(q.canonical(), "1/144*u2^7+7/96*u1*u2");
        assert_eq!(parse_poly("u1 - u1", &r).unwrap().canonical(), "0");
        assert_eq!(parse_poly("-(1+r5)/2*u1", &r).unwrap().canonical(), "(-1/2-1/2*r5)*u1");
    }

    #[test]
    fn exact_division_in_parser() {
        let r = ring();
        let p = parse_poly("(u1^2-u2^2)/(u1-u2)", &r).unwrap();
        assert_eq!(p.canonical(), "u1+u2");
        assert!(parse_poly("(u1^2+1)/u1", &r).is_err());
        assert!(parse_poly("u1/0", &r).is_err());
    }

    #[test]
    fn reports_errors_with_positions() {
        let r = ring();
        match parse_poly("u1 + u3", &r) {
            Err(AlgebraError::Parse { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("{other:?}"),
        }
        assert!(parse_poly("u1 +", &r).is_err());
        assert!(parse_poly("(u1", &r).is_err());
    }

    #[test]
    fn definition_files() {
        let r = ring();
        let basis = DenomBasis::trivial(&r);
        let mut env = Env::new();
        let defs = parse_defs("# comment\na = u1 + u2;\nb = a^2 - 2*u1*u2; # tail\n", &basis, &mut env).unwrap();
        assert_eq!(defs.len(), 2);
        assert_eq!(defs[1].1.numerator().canonical(), "u1^2+u2^2");
    }

    #[test]
    fn json_round_trip() {
        let r = ring();
        let p = parse_poly("(1/2+r5/3)*u1^3*u2 - 7", &r).unwrap();
        let back = PolyJson::of(&p).to_poly().unwrap();
        assert_eq!(back.canonical(), p.canonical());
        assert!(to_json(&p).starts_with("{\"ring\":[\"u1\",\"u2\"],\"terms\":[{\"exp\":[3,1],\"a\":\"1/2\",\"b\":\"1/3\"}"));
    }

    #[test]
    fn localized_parse() {
        let r = VarRing::of(&["t", "w"]);
        let w = Poly::var(&r, "w").unwrap();
        let basis = DenomBasis::new(&r, vec![w]).unwrap();
        let v = parse_loc("t^2/w^5 + w", &basis, &Env::new()).unwrap();
        assert_eq!(v.exps(), &[5]);
        assert_eq!(v.numerator().canonical(), "w^6+t^2");
    }
}
