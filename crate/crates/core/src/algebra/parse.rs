//! Text syntax for coordinate-ring elements, e.g. `x1^2*x2^-1`,
//! `3/2*x - 1`, `(z-1)^-2 + z^3`.
//!
//! Variables: `x` (dimension one), `x1..xn`, or `z` on a punctured sphere.
//! Negative powers are accepted for monomials with invertible variables and
//! for `(z - a)` where `a` is a puncture.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::Rational;

use super::function::{FunctionElem, FunctionKey, Variety, VarietyKind};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn tokenize(src: &str, v: &VarietyKind) -> Result<Vec<Tok>> {
    let chars: Vec<char> = src.chars().filter(|c| !c.is_whitespace()).collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            '+' => out.push(Tok::Plus),
            '-' => out.push(Tok::Minus),
            '*' => out.push(Tok::Star),
            '/' => out.push(Tok::Slash),
            '^' => out.push(Tok::Caret),
            '(' => out.push(Tok::LParen),
            ')' => out.push(Tok::RParen),
            d if d.is_ascii_digit() => {
                let start = i;
                while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..=i].iter().collect();
                out.push(Tok::Num(s.parse().map_err(|_| err(format!("bad number {s}")))?));
            }
            'x' | 'z' => {
                let start = i;
                while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let name: String = chars[start..=i].iter().collect();
                out.push(Tok::Var(resolve_var(&name, v)?));
            }
            other => return Err(err(format!("unexpected character '{other}'"))),
        }
        i += 1;
    }
    Ok(out)
}

fn resolve_var(name: &str, v: &VarietyKind) -> Result<usize> {
    match (v, name) {
        (VarietyKind::PuncturedSphere(_), "z") => Ok(0),
        (VarietyKind::PuncturedSphere(_), _) => Err(err(format!("unknown variable {name}; use z"))),
        (_, "x") if v.dim() == 1 => Ok(0),
        (_, n) if n.starts_with('x') && n.len() > 1 => {
            let i: usize = n[1..].parse().map_err(|_| err(format!("bad variable {n}")))?;
            if i == 0 || i > v.dim() {
                Err(err(format!("variable {n} out of range for dimension {}", v.dim())))
            } else {
                Ok(i - 1)
            }
        }
        _ => Err(err(format!("unknown variable {name}"))),
    }
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    variety: &'a Variety,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<FunctionElem> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.next();
                self.term()?.neg()
            }
            Some(Tok::Plus) => {
                self.next();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.next();
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.next();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<FunctionElem> {
        let mut acc = self.factor()?;
        while let Some(Tok::Star) = self.peek() {
            self.next();
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn exponent(&mut self) -> Result<Option<i64>> {
        if self.peek() != Some(&Tok::Caret) {
            return Ok(None);
        }
        self.next();
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.next();
            true
        } else {
            false
        };
        match self.next() {
            Some(Tok::Num(n)) => {
                let e: i64 = n.try_into().map_err(|_| err("exponent too large"))?;
                Ok(Some(if neg { -e } else { e }))
            }
            _ => Err(err("expected integer exponent")),
        }
    }

    fn factor(&mut self) -> Result<FunctionElem> {
        let v = self.variety.clone();
        let base = match self.next() {
            Some(Tok::Num(n)) => {
                let mut r = Rational::from_integer(n);
                if self.peek() == Some(&Tok::Slash) {
                    self.next();
                    match self.next() {
                        Some(Tok::Num(d)) if !d.is_zero() => r /= Rational::from_integer(d),
                        _ => return Err(err("expected nonzero denominator")),
                    }
                }
                FunctionElem::constant(&v, r)
            }
            Some(Tok::Var(i)) => FunctionElem::coordinate(&v, i),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                if self.next() != Some(Tok::RParen) {
                    return Err(err("missing ')'"));
                }
                inner
            }
            other => return Err(err(format!("unexpected token {other:?}"))),
        };
        match self.exponent()? {
            None => Ok(base),
            Some(e) if e >= 0 => Ok(base.pow(e as u32)),
            Some(e) => invert(&base).map(|inv| inv.pow((-e) as u32)),
        }
    }
}

/// Inverse of a unit of the coordinate ring that is representable here.
fn invert(f: &FunctionElem) -> Result<FunctionElem> {
    let v = f.variety().clone();
    if let Some(c) = f.as_constant() {
        if c.is_zero() {
            return Err(err("division by zero"));
        }
        return Ok(FunctionElem::constant(&v, c.recip()));
    }
    match &*v {
        VarietyKind::Torus(_) if f.terms().len() == 1 => {
            let (k, c) = f.terms().iter().next().unwrap();
            let FunctionKey::Monomial(a) = k else { unreachable!() };
            let neg: Vec<i32> = a.iter().map(|e| -e).collect();
            Ok(FunctionElem::monomial(&v, &neg)?.scale(&c.recip()))
        }
        VarietyKind::PuncturedSphere(p) => {
            // c * (z - a) with a a puncture
            let c = f.coefficient(&FunctionKey::Power(1));
            let c0 = f.coefficient(&FunctionKey::Power(0));
            if f.terms().len() > 2 || c.is_zero() || f.terms().keys().any(|k| matches!(k, FunctionKey::Pole(..) | FunctionKey::Power(2..))) {
                return Err(err(format!("cannot invert {f}")));
            }
            let a = -(c0 / &c);
            match p.iter().position(|x| *x == a) {
                Some(i) => Ok(FunctionElem::pole(&v, i, 1)?.scale(&c.recip())),
                None => Err(err(format!("{a} is not a puncture; cannot invert {f}"))),
            }
        }
        _ => Err(err(format!("{f} is not invertible on {}", v.name()))),
    }
}

pub fn parse_function(src: &str, variety: &Variety) -> Result<FunctionElem> {
    let toks = tokenize(src, variety)?;
    if toks.is_empty() {
        return Err(err("empty expression"));
    }
    let mut p = Parser {
        toks,
        pos: 0,
        variety,
    };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(err(format!("trailing input at token {}", p.pos)));
    }
    Ok(out)
}
