//! Expression parser shared by all algebraic types.
//!
//! Grammar (ASCII, whitespace insignificant):
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' INT)?
//! atom  := INT | IDENT | '(' expr ')'
//! ```
//!
//! Integers are read modulo p. `g` is the polynomial-basis generator of F_q
//! (only when r > 1). Ring variables are `t` on the line and `x, y, z` on the
//! plane; coordinate variables are `y0, y1, ...`.

use std::collections::BTreeMap;

use super::{CoordRing, Field, FnFieldElement, YPoly};
use crate::error::{Error, Result};

/// Which coordinate variables an expression may use: `y{offset}` through
/// `y{offset + count - 1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct YVars {
    pub offset: usize,
    pub count: usize,
}

impl YVars {
    pub const NONE: YVars = YVars { offset: 0, count: 0 };

    /// `y1..yn`
    pub fn affine(n: usize) -> YVars {
        YVars { offset: 1, count: n }
    }

    /// `y0..yn`
    pub fn projective(n: usize) -> YVars {
        YVars {
            offset: 0,
            count: n + 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(u64),
    Ident(String),
    Sym(char),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
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
            let n = text[start..i]
                .parse::<u64>()
                .map_err(|_| Error::syntax(start, "integer literal too large"))?;
            out.push((start, Tok::Int(n)));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push((start, Tok::Ident(text[start..i].to_string())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(Error::syntax(i, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

/// Fraction of ring elements that need not be of weight zero (e.g. the form `x`).
#[derive(Clone)]
struct Frac<R> {
    num: R,
    den: R,
}

impl<R: CoordRing> Frac<R> {
    fn ring(r: R) -> Self {
        let field = r.field();
        Frac {
            num: r,
            den: R::one(field),
        }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn weight(&self) -> Option<i64> {
        if self.num.is_zero() {
            return None;
        }
        let d = |r: &R| r.degree().finite().unwrap_or(0) as i64;
        Some(d(&self.num) - d(&self.den))
    }

    fn reduce(num: R, den: R) -> Self {
        if num.is_zero() {
            let field = den.field();
            return Frac {
                num,
                den: R::one(field),
            };
        }
        let g = num.gcd(&den);
        let num = num.exact_div(&g).expect("gcd divides");
        let den = den.exact_div(&g).expect("gcd divides");
        let inv = den.leading_coeff().inv().expect("nonzero");
        Frac {
            num: num.scale(inv),
            den: den.scale(inv),
        }
    }

    fn add(&self, rhs: &Self, pos: usize) -> Result<Self> {
        if self.is_zero() {
            return Ok(rhs.clone());
        }
        if rhs.is_zero() {
            return Ok(self.clone());
        }
        if R::GRADED && self.weight() != rhs.weight() {
            return Err(Error::Inhomogeneous(format!(
                "sum of terms of degrees {} and {} at byte {pos}",
                self.weight().unwrap(),
                rhs.weight().unwrap()
            )));
        }
        Ok(Frac::reduce(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        ))
    }

    fn mul(&self, rhs: &Self) -> Self {
        Frac::reduce(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }

    fn neg(&self) -> Self {
        Frac {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Frac::reduce(self.den.clone(), self.num.clone()))
    }
}

/// Polynomial in coordinate variables with `Frac` coefficients.
type Val<R> = BTreeMap<Vec<u32>, Frac<R>>;

struct Parser<'a, R: CoordRing> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    field: Field,
    ring_vars: Vec<(&'static str, R)>,
    yvars: YVars,
    _text: &'a str,
}

impl<'a, R: CoordRing> Parser<'a, R> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn constant(&self, f: Frac<R>) -> Val<R> {
        let mut v = Val::new();
        if !f.is_zero() {
            v.insert(vec![0; self.yvars.count], f);
        }
        v
    }

    fn add(&self, a: Val<R>, b: Val<R>, pos: usize) -> Result<Val<R>> {
        let mut out = a;
        for (e, c) in b {
            let s = match out.get(&e) {
                Some(old) => old.add(&c, pos)?,
                None => c,
            };
            if s.is_zero() {
                out.remove(&e);
            } else {
                out.insert(e, s);
            }
        }
        Ok(out)
    }

    fn mul(&self, a: &Val<R>, b: &Val<R>, pos: usize) -> Result<Val<R>> {
        let mut out = Val::new();
        for (ea, ca) in a {
            for (eb, cb) in b {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let mut single = Val::new();
                let prod = ca.mul(cb);
                if !prod.is_zero() {
                    single.insert(e, prod);
                }
                out = self.add(out, single, pos)?;
            }
        }
        Ok(out)
    }

    fn neg(&self, a: Val<R>) -> Val<R> {
        a.into_iter().map(|(e, c)| (e, c.neg())).collect()
    }

    fn expr(&mut self) -> Result<Val<R>> {
        let mut acc = self.term()?;
        while let Some(Tok::Sym(c @ ('+' | '-'))) = self.peek().cloned() {
            let pos = self.offset();
            self.pos += 1;
            let rhs = self.term()?;
            let rhs = if c == '-' { self.neg(rhs) } else { rhs };
            acc = self.add(acc, rhs, pos)?;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Val<R>> {
        let mut acc = self.unary()?;
        while let Some(Tok::Sym(c @ ('*' | '/'))) = self.peek().cloned() {
            let pos = self.offset();
            self.pos += 1;
            let rhs = self.unary()?;
            if c == '*' {
                acc = self.mul(&acc, &rhs, pos)?;
            } else {
                let divisor = match rhs.len() {
                    0 => return Err(Error::DivisionByZero),
                    1 if rhs.keys().next().unwrap().iter().all(|&k| k == 0) => {
                        rhs.into_values().next().unwrap()
                    }
                    _ => {
                        return Err(Error::syntax(
                            pos,
                            "division by an expression in coordinate variables",
                        ))
                    }
                };
                let inv = self.constant(divisor.inv()?);
                acc = self.mul(&acc, &inv, pos)?;
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Val<R>> {
        if let Some(Tok::Sym('-')) = self.peek() {
            self.pos += 1;
            let v = self.unary()?;
            return Ok(self.neg(v));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Val<R>> {
        let base = self.atom()?;
        if let Some(Tok::Sym('^')) = self.peek() {
            let pos = self.offset();
            self.pos += 1;
            let e = match self.peek().cloned() {
                Some(Tok::Int(n)) => {
                    self.pos += 1;
                    u32::try_from(n).map_err(|_| Error::syntax(pos, "exponent too large"))?
                }
                _ => return Err(Error::syntax(self.offset(), "expected a nonnegative integer exponent")),
            };
            let mut acc = self.constant(Frac::ring(R::one(self.field)));
            for _ in 0..e {
                acc = self.mul(&acc, &base, pos)?;
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Val<R>> {
        let pos = self.offset();
        let tok = self
            .peek()
            .cloned()
            .ok_or_else(|| Error::syntax(pos, "unexpected end of input"))?;
        self.pos += 1;
        match tok {
            Tok::Int(n) => {
                let p = self.field.p() as u64;
                let c = self.field.from_int((n % p) as i64);
                Ok(self.constant(Frac::ring(R::constant(c))))
            }
            Tok::Sym('(') => {
                let v = self.expr()?;
                match self.peek() {
                    Some(Tok::Sym(')')) => {
                        self.pos += 1;
                        Ok(v)
                    }
                    _ => Err(Error::syntax(self.offset(), "expected `)`")),
                }
            }
            Tok::Sym(c) => Err(Error::syntax(pos, format!("unexpected `{c}`"))),
            Tok::Ident(name) => self.ident(&name, pos),
        }
    }

    fn ident(&self, name: &str, _pos: usize) -> Result<Val<R>> {
        if name == "g" {
            if self.field.r() == 1 {
                return Err(Error::UnknownVariable(
                    "g (the generator is only defined for r > 1)".into(),
                ));
            }
            return Ok(self.constant(Frac::ring(R::constant(self.field.generator()))));
        }
        if let Some((_, r)) = self.ring_vars.iter().find(|(n, _)| *n == name) {
            return Ok(self.constant(Frac::ring(r.clone())));
        }
        if let Some(idx) = name.strip_prefix('y').and_then(|d| d.parse::<usize>().ok()) {
            if idx >= self.yvars.offset && idx < self.yvars.offset + self.yvars.count {
                let mut e = vec![0; self.yvars.count];
                e[idx - self.yvars.offset] = 1;
                let mut v = Val::new();
                v.insert(e, Frac::ring(R::one(self.field)));
                return Ok(v);
            }
        }
        Err(Error::UnknownVariable(name.to_string()))
    }
}

fn parse_val<R: CoordRing>(text: &str, field: Field, yvars: YVars) -> Result<Val<R>> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
        field,
        ring_vars: R::variables(field),
        yvars,
        _text: text,
    };
    if p.toks.is_empty() {
        return Err(Error::syntax(0, "empty expression"));
    }
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::syntax(p.offset(), "unexpected trailing input"));
    }
    Ok(v)
}

fn single_frac<R: CoordRing>(v: Val<R>, field: Field) -> Frac<R> {
    v.into_values()
        .next()
        .unwrap_or_else(|| Frac::ring(R::zero(field)))
}

/// Parses an element of the coordinate ring: a polynomial in `t`, or a form in
/// `x, y, z`.
pub fn parse_ring<R: CoordRing>(text: &str, field: Field) -> Result<R> {
    let f = single_frac(parse_val::<R>(text, field, YVars::NONE)?, field);
    if f.den.degree() != super::Degree::Finite(0) {
        return Err(Error::invalid(format!("`{text}` is not a polynomial")));
    }
    let inv = f.den.leading_coeff().inv()?;
    Ok(f.num.scale(inv))
}

/// Parses an element of the function field F_q(X).
pub fn parse_fn<R: CoordRing>(text: &str, field: Field) -> Result<FnFieldElement<R>> {
    let f = single_frac(parse_val::<R>(text, field, YVars::NONE)?, field);
    FnFieldElement::new(f.num, f.den)
}

/// Parses a polynomial in coordinate variables with function-field coefficients.
pub fn parse_ypoly<R: CoordRing>(text: &str, field: Field, yvars: YVars) -> Result<YPoly<R>> {
    let v = parse_val::<R>(text, field, yvars)?;
    let mut terms = Vec::with_capacity(v.len());
    for (e, c) in v {
        terms.push((e, FnFieldElement::new(c.num, c.den)?));
    }
    Ok(YPoly::from_terms(field, yvars.count, terms))
}
