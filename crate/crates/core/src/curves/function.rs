//! Functions on a model: `(A(x) + B(x) y) / D(x)`, reduced by the curve equation.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::f2poly::F2Poly;
use super::model::ArtinSchreierModel;
use crate::error::{Error, Result};
use crate::parse::{parse_expr, Algebra};

/// `a + b y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BiPoly {
    pub a: F2Poly,
    pub b: F2Poly,
}

impl BiPoly {
    pub const ZERO: BiPoly = BiPoly {
        a: F2Poly::ZERO,
        b: F2Poly::ZERO,
    };
    pub const ONE: BiPoly = BiPoly {
        a: F2Poly::ONE,
        b: F2Poly::ZERO,
    };

    pub fn new(a: F2Poly, b: F2Poly) -> BiPoly {
        BiPoly { a, b }
    }

    pub fn from_x(a: F2Poly) -> BiPoly {
        BiPoly { a, b: F2Poly::ZERO }
    }

    pub fn y() -> BiPoly {
        BiPoly {
            a: F2Poly::ZERO,
            b: F2Poly::ONE,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn add(&self, o: &BiPoly) -> BiPoly {
        BiPoly {
            a: self.a + o.a,
            b: self.b + o.b,
        }
    }

    pub fn scale(&self, p: F2Poly) -> Result<BiPoly> {
        Ok(BiPoly {
            a: self.a.try_mul(p)?,
            b: self.b.try_mul(p)?,
        })
    }

    /// Product, using `y^2 = a y + f`.
    pub fn mul(&self, o: &BiPoly, m: &ArtinSchreierModel) -> Result<BiPoly> {
        let bd = self.b.try_mul(o.b)?;
        Ok(BiPoly {
            a: self.a.try_mul(o.a)? + bd.try_mul(m.f)?,
            b: self.a.try_mul(o.b)? + self.b.try_mul(o.a)? + bd.try_mul(m.a)?,
        })
    }

    /// Image under `y -> y + a`, the other root.
    pub fn conj(&self, m: &ArtinSchreierModel) -> Result<BiPoly> {
        Ok(BiPoly {
            a: self.a + self.b.try_mul(m.a)?,
            b: self.b,
        })
    }

    /// `A^2 + a A B + f B^2`.
    pub fn norm(&self, m: &ArtinSchreierModel) -> Result<F2Poly> {
        Ok(self.a.try_mul(self.a)?
            + m.a.try_mul(self.a)?.try_mul(self.b)?
            + m.f.try_mul(self.b.try_mul(self.b)?)?)
    }

    /// Degree as a polynomial in `x` and `y` with `deg y` counted as `wy`.
    pub fn weighted_degree(&self, wy: i64) -> i64 {
        let b = if self.b.is_zero() { -1 } else { self.b.deg_i() + wy };
        self.a.deg_i().max(b)
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        if !self.b.is_zero() {
            terms.push(match self.b {
                F2Poly::ONE => "y".to_string(),
                b if b.0.count_ones() == 1 => format!("{b}*y"),
                b => format!("({b})*y"),
            });
        }
        if !self.a.is_zero() {
            terms.push(self.a.to_string());
        }
        if terms.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&terms.join("+"))
    }
}

/// `num / den` with `den` a nonzero polynomial in `x`, in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RatFunc {
    pub num: BiPoly,
    pub den: F2Poly,
}

impl RatFunc {
    pub fn new(num: BiPoly, den: F2Poly) -> Result<RatFunc> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let g = num.a.gcd(num.b).gcd(den);
        let q = |p: F2Poly| p.div_rem(g).expect("gcd is nonzero").0;
        Ok(RatFunc {
            num: BiPoly::new(q(num.a), q(num.b)),
            den: q(den),
        })
    }

    pub fn poly(num: BiPoly) -> RatFunc {
        RatFunc {
            num,
            den: F2Poly::ONE,
        }
    }

    pub fn from_x(p: F2Poly) -> RatFunc {
        Self::poly(BiPoly::from_x(p))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &RatFunc) -> Result<RatFunc> {
        let n = self.num.scale(o.den)?.add(&o.num.scale(self.den)?);
        RatFunc::new(n, self.den.try_mul(o.den)?)
    }

    pub fn mul(&self, o: &RatFunc, m: &ArtinSchreierModel) -> Result<RatFunc> {
        RatFunc::new(self.num.mul(&o.num, m)?, self.den.try_mul(o.den)?)
    }

    pub fn inv(&self, m: &ArtinSchreierModel) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // 1/(A+By) = conj / norm
        let num = self.num.conj(m)?.scale(self.den)?;
        RatFunc::new(num, self.num.norm(m)?)
    }

    pub fn div(&self, o: &RatFunc, m: &ArtinSchreierModel) -> Result<RatFunc> {
        self.mul(&o.inv(m)?, m)
    }

    pub fn pow(&self, e: i64, m: &ArtinSchreierModel) -> Result<RatFunc> {
        let base = if e < 0 { self.inv(m)? } else { *self };
        let mut acc = RatFunc::poly(BiPoly::ONE);
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base, m)?;
        }
        Ok(acc)
    }

    /// Norm to F_2(x) as (numerator, denominator).
    pub fn norm(&self, m: &ArtinSchreierModel) -> Result<(F2Poly, F2Poly)> {
        Ok((self.num.norm(m)?, self.den.try_mul(self.den)?))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == F2Poly::ONE {
            return write!(f, "{}", self.num);
        }
        let wrap = |s: String, simple: bool| if simple { s } else { format!("({s})") };
        let n = self.num.to_string();
        let d = self.den.to_string();
        let ns = !n.contains('+');
        let ds = !d.contains('+');
        write!(f, "{}/{}", wrap(n, ns), wrap(d, ds))
    }
}

struct PlaneAlgebra;

impl Algebra for PlaneAlgebra {
    type V = Vec<F2Poly>;
    fn num(&self, n: &BigInt) -> Result<Self::V> {
        Ok(vec![if (n % 2u32).is_zero() {
            F2Poly::ZERO
        } else {
            F2Poly::ONE
        }])
    }
    fn var(&self, c: char) -> Result<Self::V> {
        match c {
            'x' => Ok(vec![F2Poly::X]),
            'y' => Ok(vec![F2Poly::ZERO, F2Poly::ONE]),
            _ => Err(Error::Parse(format!("unknown variable {c:?} (expected x or y)"))),
        }
    }
    fn add(&self, a: Self::V, b: Self::V) -> Result<Self::V> {
        let mut out = a;
        out.resize(out.len().max(b.len()), F2Poly::ZERO);
        for (i, p) in b.into_iter().enumerate() {
            out[i] += p;
        }
        Ok(out)
    }
    fn sub(&self, a: Self::V, b: Self::V) -> Result<Self::V> {
        self.add(a, b)
    }
    fn mul(&self, a: Self::V, b: Self::V) -> Result<Self::V> {
        let mut out = vec![F2Poly::ZERO; a.len() + b.len()];
        for (i, p) in a.iter().enumerate() {
            for (j, q) in b.iter().enumerate() {
                out[i + j] += p.try_mul(*q)?;
            }
        }
        Ok(out)
    }
    fn neg(&self, a: Self::V) -> Result<Self::V> {
        Ok(a)
    }
}

/// Polynomial in `x, y` over F_2 as coefficients of `y^0, y^1, ...`.
pub fn parse_plane_poly(s: &str) -> Result<Vec<F2Poly>> {
    let mut v = parse_expr(s)?.eval(&PlaneAlgebra)?;
    while v.last() == Some(&F2Poly::ZERO) {
        v.pop();
    }
    Ok(v)
}

/// Polynomial in `x` alone.
pub fn parse_f2poly(s: &str) -> Result<F2Poly> {
    let v = parse_plane_poly(s)?;
    match v.len() {
        0 => Ok(F2Poly::ZERO),
        1 => Ok(v[0]),
        _ => Err(Error::Parse(format!("{s:?} involves y"))),
    }
}

struct FunctionAlgebra<'a> {
    model: &'a ArtinSchreierModel,
}

impl Algebra for FunctionAlgebra<'_> {
    type V = RatFunc;
    fn num(&self, n: &BigInt) -> Result<RatFunc> {
        Ok(RatFunc::from_x(if (n % 2u32).is_zero() {
            F2Poly::ZERO
        } else {
            F2Poly::ONE
        }))
    }
    fn var(&self, c: char) -> Result<RatFunc> {
        match c {
            'x' => Ok(RatFunc::from_x(F2Poly::X)),
            'y' => Ok(RatFunc::poly(BiPoly::y())),
            _ => Err(Error::Parse(format!("unknown variable {c:?} (expected x or y)"))),
        }
    }
    fn add(&self, a: RatFunc, b: RatFunc) -> Result<RatFunc> {
        a.add(&b)
    }
    fn sub(&self, a: RatFunc, b: RatFunc) -> Result<RatFunc> {
        a.add(&b)
    }
    fn mul(&self, a: RatFunc, b: RatFunc) -> Result<RatFunc> {
        a.mul(&b, self.model)
    }
    fn neg(&self, a: RatFunc) -> Result<RatFunc> {
        Ok(a)
    }
    fn div(&self, a: RatFunc, b: RatFunc) -> Result<RatFunc> {
        a.div(&b, self.model)
    }
    fn pow(&self, a: RatFunc, e: u32) -> Result<RatFunc> {
        a.pow(i64::from(e), self.model)
    }
}

/// Parse a rational function in `x, y` on `model`, e.g. `(y+x^3)/x^3`.
pub fn parse_function(model: &ArtinSchreierModel, s: &str) -> Result<RatFunc> {
    parse_expr(s)?.eval(&FunctionAlgebra { model })
}
