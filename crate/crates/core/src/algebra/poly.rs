use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Dense univariate polynomial over Z, lowest degree first.
///
/// The coefficient vector never carries a trailing zero, so the zero
/// polynomial is the empty vector and `degree` is `len - 1` otherwise.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * t^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k];
        v.push(c);
        Self::new(v)
    }

    /// The polynomial `t`.
    pub fn t() -> Self {
        Self::from_i64s(&[0, 1])
    }

    /// Monic linear polynomial `t - r`.
    pub fn linear_root(r: i64) -> Self {
        Self::from_i64s(&[-r, 1])
    }

    /// Product of the given factors.
    pub fn product<'a, I: IntoIterator<Item = &'a IntPoly>>(factors: I) -> Self {
        factors.into_iter().fold(Self::one(), |acc, f| &acc * f)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to -1.
    pub fn degree_i(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn lc(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_i64(&self, x: i64) -> BigInt {
        self.eval(&BigInt::from(x))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// `self / content`, keeping the sign of the leading coefficient.
    pub fn primitive_part(&self) -> Self {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        self.div_scalar(&c)
    }

    /// Exact division of every coefficient; the caller guarantees divisibility.
    pub fn div_scalar(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|x| x / c).collect())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// `self * t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![BigInt::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs: v }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self(p(t))`.
    pub fn compose(&self, p: &IntPoly) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * p) + &Self::constant(c.clone());
        }
        acc
    }

    /// Pseudo-division: returns `(q, r)` with `lc(d)^(deg a - deg d + 1) * a = q*d + r`.
    pub fn pseudo_div_rem(&self, d: &IntPoly) -> (IntPoly, IntPoly) {
        assert!(!d.is_zero(), "pseudo-division by zero polynomial");
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() < d.coeffs.len() {
            return (Self::zero(), self.clone());
        }
        let delta = self.coeffs.len() - d.coeffs.len();
        let l = d.lc();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); delta + 1];
        let mut e = delta as i64 + 1;
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let lr = r.last().unwrap().clone();
            for c in q.iter_mut() {
                *c *= &l;
            }
            q[k] += &lr;
            for c in r.iter_mut() {
                *c *= &l;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[i + k] -= &lr * dc;
            }
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
            e -= 1;
        }
        if e > 0 {
            let f = num_traits::pow(l, e as usize);
            for c in q.iter_mut() {
                *c *= &f;
            }
            for c in r.iter_mut() {
                *c *= &f;
            }
        }
        (Self::new(q), Self::new(r))
    }

    pub fn pseudo_rem(&self, d: &IntPoly) -> IntPoly {
        self.pseudo_div_rem(d).1
    }

    /// Division in Z[t]; `None` unless `d` divides `self` exactly.
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.coeffs.len() < d.coeffs.len() {
            return None;
        }
        let dd = d.coeffs.len() - 1;
        let l = d.lc();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); r.len() - dd];
        while r.len() > dd {
            let k = r.len() - 1 - dd;
            let (qc, rem) = r.last().unwrap().div_rem(&l);
            if !rem.is_zero() {
                return None;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[i + k] -= &qc * dc;
            }
            q[k] = qc;
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        if r.is_empty() {
            Some(Self::new(q))
        } else {
            None
        }
    }

    /// Key for the lexicographic order on coefficient vectors read from the top degree down.
    pub fn lex_key(&self) -> (usize, Vec<BigInt>) {
        (self.coeffs.len(), self.coeffs.iter().rev().cloned().collect())
    }

    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(|c| c.to_i64()).collect()
    }

    pub fn display_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if i == 0 || !a.is_one() {
                out.push_str(&a.to_string());
            }
            out.push_str(&mono);
        }
        out
    }
}

impl Ord for IntPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.lex_key().cmp(&other.lex_key())
    }
}

impl PartialOrd for IntPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_var("t"))
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        IntPoly::new(v)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -&self
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CoeffRepr {
    Small(i64),
    Big(String),
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<CoeffRepr> = self
            .coeffs
            .iter()
            .map(|c| match c.to_i64() {
                Some(x) => CoeffRepr::Small(x),
                None => CoeffRepr::Big(c.to_string()),
            })
            .collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v: Vec<CoeffRepr> = Vec::deserialize(d)?;
        let mut out = Vec::with_capacity(v.len());
        for c in v {
            out.push(match c {
                CoeffRepr::Small(x) => BigInt::from(x),
                CoeffRepr::Big(s) => s.parse().map_err(D::Error::custom)?,
            });
        }
        Ok(IntPoly::new(out))
    }
}

/// Serde adapter writing a `BigInt` as a JSON integer when it fits in 64 bits.
pub mod bigint_serde {
    use super::*;

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        match x.to_i64() {
            Some(v) => CoeffRepr::Small(v),
            None => CoeffRepr::Big(x.to_string()),
        }
        .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        match CoeffRepr::deserialize(d)? {
            CoeffRepr::Small(x) => Ok(BigInt::from(x)),
            CoeffRepr::Big(s) => s.parse().map_err(D::Error::custom),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn normalizes_trailing_zeros() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[]).degree(), None);
    }

    #[test]
    fn pseudo_division_identity() {
        let a = p(&[3, -1, 4, 1, -5, 9]);
        let d = p(&[2, 0, 3]);
        let (q, r) = a.pseudo_div_rem(&d);
        let lhs = a.scale(&num_traits::pow(BigInt::from(3), 4));
        assert_eq!(lhs, &(&q * &d) + &r);
        assert!(r.degree_i() < 2);
    }

    #[test]
    fn exact_division() {
        let f = p(&[1, 3, 1]);
        let g = p(&[-1, 1]);
        let prod = &f * &g;
        assert_eq!(prod.div_exact(&g), Some(f.clone()));
        assert_eq!(prod.div_exact(&p(&[1, 1])), None);
        assert_eq!(p(&[1, 2]).div_exact(&p(&[0, 2])), None);
    }

    #[test]
    fn display_and_json() {
        let f = p(&[-2, 2, 1]);
        assert_eq!(f.to_string(), "t^2 + 2t - 2");
        assert_eq!(p(&[0, -1]).to_string(), "-t");
        let js = serde_json::to_string(&f).unwrap();
        assert_eq!(js, "[-2,2,1]");
        let back: IntPoly = serde_json::from_str(&js).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn compose_and_pow() {
        let f = p(&[2, 1]);
        assert_eq!(f.compose(&p(&[1, 1])), p(&[3, 1]));
        assert_eq!(p(&[1, 1]).pow(3), p(&[1, 3, 3, 1]));
    }
}
