//! Small expression parser shared by every textual input.
//!
//! Accepts `+ - * / ^`, parentheses, integer literals, single-letter
//! variables and implicit multiplication (`3t`, `2(t+1)`, `xy`).

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(BigInt),
    Var(char),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

/// Target algebra for [`Expr::eval`].
pub trait Algebra {
    type V: Clone;
    fn num(&self, n: &BigInt) -> Result<Self::V>;
    fn var(&self, c: char) -> Result<Self::V>;
    fn add(&self, a: Self::V, b: Self::V) -> Result<Self::V>;
    fn sub(&self, a: Self::V, b: Self::V) -> Result<Self::V>;
    fn mul(&self, a: Self::V, b: Self::V) -> Result<Self::V>;
    fn neg(&self, a: Self::V) -> Result<Self::V>;
    fn div(&self, _a: Self::V, _b: Self::V) -> Result<Self::V> {
        Err(Error::Parse("division is not allowed here".into()))
    }
    fn pow(&self, a: Self::V, e: u32) -> Result<Self::V> {
        let mut acc = self.num(&BigInt::from(1))?;
        for _ in 0..e {
            acc = self.mul(acc, a.clone())?;
        }
        Ok(acc)
    }
}

impl Expr {
    pub fn eval<A: Algebra>(&self, alg: &A) -> Result<A::V> {
        Ok(match self {
            Expr::Num(n) => alg.num(n)?,
            Expr::Var(c) => alg.var(*c)?,
            Expr::Neg(a) => alg.neg(a.eval(alg)?)?,
            Expr::Add(a, b) => alg.add(a.eval(alg)?, b.eval(alg)?)?,
            Expr::Sub(a, b) => alg.sub(a.eval(alg)?, b.eval(alg)?)?,
            Expr::Mul(a, b) => alg.mul(a.eval(alg)?, b.eval(alg)?)?,
            Expr::Div(a, b) => alg.div(a.eval(alg)?, b.eval(alg)?)?,
            Expr::Pow(a, e) => alg.pow(a.eval(alg)?, *e)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(char),
    Op(char),
    LParen,
    RParen,
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => {}
            '0'..='9' => {
                let start = i;
                while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let lit: String = chars[start..=i].iter().collect();
                out.push(Tok::Num(lit.parse().expect("digits")));
            }
            '+' | '*' | '/' | '^' => out.push(Tok::Op(c)),
            '-' | '\u{2212}' => out.push(Tok::Op('-')),
            '\u{00b7}' => out.push(Tok::Op('*')),
            '(' => out.push(Tok::LParen),
            ')' => out.push(Tok::RParen),
            c if c.is_ascii_alphabetic() => out.push(Tok::Var(c)),
            _ => return Err(Error::Parse(format!("unexpected character {c:?} in {s:?}"))),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at token {} in {:?}", self.pos, self.src))
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        while let Some(Tok::Op(op @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.term()?;
            lhs = if op == '+' {
                Expr::Add(Box::new(lhs), Box::new(rhs))
            } else {
                Expr::Sub(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Op('*')) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
                }
                Some(Tok::Op('/')) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    lhs = Expr::Div(Box::new(lhs), Box::new(rhs));
                }
                Some(Tok::Num(_) | Tok::Var(_) | Tok::LParen) => {
                    let rhs = self.power()?;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Some(Tok::Op('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            let e = match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    n
                }
                Some(Tok::LParen) => {
                    self.pos += 1;
                    let n = match self.peek().cloned() {
                        Some(Tok::Num(n)) => n,
                        _ => return Err(self.err("expected integer exponent")),
                    };
                    self.pos += 1;
                    if self.peek() != Some(&Tok::RParen) {
                        return Err(self.err("expected ')'"));
                    }
                    self.pos += 1;
                    n
                }
                _ => return Err(self.err("expected exponent")),
            };
            let e = e
                .to_u32()
                .filter(|&e| e <= 4096)
                .ok_or_else(|| self.err("exponent too large"))?;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Expr::Num(n))
            }
            Some(Tok::Var(c)) => {
                self.pos += 1;
                Ok(Expr::Var(c))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            _ => Err(self.err("expected a number, variable or '('")),
        }
    }
}

pub fn parse_expr(s: &str) -> Result<Expr> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0, src: s };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

/// Integer polynomials in one variable.
pub struct IntPolyAlgebra {
    pub var: char,
}

impl Algebra for IntPolyAlgebra {
    type V = crate::algebra::IntPoly;
    fn num(&self, n: &BigInt) -> Result<Self::V> {
        Ok(Self::V::constant(n.clone()))
    }
    fn var(&self, c: char) -> Result<Self::V> {
        if c == self.var {
            Ok(Self::V::t())
        } else {
            Err(Error::Parse(format!(
                "unknown variable {c:?} (expected {:?})",
                self.var
            )))
        }
    }
    fn add(&self, a: Self::V, b: Self::V) -> Result<Self::V> {
        Ok(a + b)
    }
    fn sub(&self, a: Self::V, b: Self::V) -> Result<Self::V> {
        Ok(a - b)
    }
    fn mul(&self, a: Self::V, b: Self::V) -> Result<Self::V> {
        Ok(a * b)
    }
    fn neg(&self, a: Self::V) -> Result<Self::V> {
        Ok(-a)
    }
    fn pow(&self, a: Self::V, e: u32) -> Result<Self::V> {
        Ok(a.pow(e))
    }
}

/// Parse an integer polynomial in `t`.
pub fn parse_int_poly(s: &str) -> Result<crate::algebra::IntPoly> {
    parse_expr(s)?.eval(&IntPolyAlgebra { var: 't' })
}

/// Elements of a fixed F_{2^m}, written in the field letter (or any of the
/// given aliases).
pub struct GfAlgebra<'a> {
    pub field: &'a crate::gf::GfField,
    pub letters: Vec<char>,
}

impl Algebra for GfAlgebra<'_> {
    type V = u32;
    fn num(&self, n: &BigInt) -> Result<u32> {
        Ok(u32::from(!(n % 2u32).is_zero()))
    }
    fn var(&self, c: char) -> Result<u32> {
        if c == self.field.letter() || self.letters.contains(&c) {
            Ok(self.field.gen())
        } else {
            Err(Error::Parse(format!("unknown field generator {c:?}")))
        }
    }
    fn add(&self, a: u32, b: u32) -> Result<u32> {
        Ok(a ^ b)
    }
    fn sub(&self, a: u32, b: u32) -> Result<u32> {
        Ok(a ^ b)
    }
    fn mul(&self, a: u32, b: u32) -> Result<u32> {
        Ok(self.field.mul(a, b))
    }
    fn neg(&self, a: u32) -> Result<u32> {
        Ok(a)
    }
    fn div(&self, a: u32, b: u32) -> Result<u32> {
        self.field.div(a, b)
    }
    fn pow(&self, a: u32, e: u32) -> Result<u32> {
        self.field.pow(a, e as i64)
    }
}

/// Parse an element of `field` such as `a^4+a^3+a^2+1`.
pub fn parse_gf(field: &crate::gf::GfField, s: &str) -> Result<u32> {
    parse_expr(s)?.eval(&GfAlgebra {
        field,
        letters: vec![],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::IntPoly;

    #[test]
    fn int_polys() {
        assert_eq!(parse_int_poly("t+2").unwrap(), IntPoly::from_i64s(&[2, 1]));
        assert_eq!(
            parse_int_poly("t^2+3t+1").unwrap(),
            IntPoly::from_i64s(&[1, 3, 1])
        );
        let f = parse_int_poly("(t-1)*(t+2)(t^2+3t+1)^2").unwrap();
        assert_eq!(f.degree(), Some(6));
        assert_eq!(f.eval_i64(1), 0.into());
        assert_eq!(
            parse_int_poly("−2t + t^2").unwrap(),
            IntPoly::from_i64s(&[0, -2, 1])
        );
        assert_eq!(parse_int_poly("-t").unwrap(), IntPoly::from_i64s(&[0, -1]));
        assert!(parse_int_poly("x+1").is_err());
        assert!(parse_int_poly("t/2").is_err());
        assert!(parse_int_poly("(t+1").is_err());
        assert!(parse_int_poly("").is_err());
        assert!(parse_int_poly("t^").is_err());
    }

    #[test]
    fn gf_elements() {
        let f = crate::gf::GfField::get(6).unwrap();
        let v = parse_gf(&f, "c^4+c^3+c^2+1").unwrap();
        assert_eq!(v, 0b11101);
        assert_eq!(parse_gf(&f, "c^6").unwrap(), parse_gf(&f, "c^5+1").unwrap());
    }
}
