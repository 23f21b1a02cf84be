//! Polynomials over F_2 packed into a `u128` (degree ≤ 127).

use std::fmt;
use std::ops::{Add, AddAssign};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::GfField;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct F2Poly(pub u128);

impl F2Poly {
    pub const ZERO: F2Poly = F2Poly(0);
    pub const ONE: F2Poly = F2Poly(1);
    pub const X: F2Poly = F2Poly(2);

    pub fn monomial(n: u32) -> Result<F2Poly> {
        if n > 127 {
            return Err(overflow());
        }
        Ok(F2Poly(1u128 << n))
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn degree(self) -> Option<u32> {
        (self.0 != 0).then(|| 127 - self.0.leading_zeros())
    }

    /// Degree with `-1` for the zero polynomial.
    pub fn deg_i(self) -> i64 {
        self.degree().map_or(-1, i64::from)
    }

    pub fn coeff(self, i: u32) -> bool {
        i < 128 && (self.0 >> i) & 1 == 1
    }

    pub fn try_mul(self, o: F2Poly) -> Result<F2Poly> {
        match (self.degree(), o.degree()) {
            (Some(a), Some(b)) if a + b > 127 => Err(overflow()),
            _ => Ok(F2Poly(clmul128(self.0, o.0))),
        }
    }

    pub fn try_pow(self, e: u32) -> Result<F2Poly> {
        let mut acc = F2Poly::ONE;
        for _ in 0..e {
            acc = acc.try_mul(self)?;
        }
        Ok(acc)
    }

    pub fn div_rem(self, d: F2Poly) -> Result<(F2Poly, F2Poly)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let mut r = self.0;
        let mut q = 0u128;
        while r != 0 {
            let rd = 127 - r.leading_zeros();
            if rd < dd {
                break;
            }
            q |= 1 << (rd - dd);
            r ^= d.0 << (rd - dd);
        }
        Ok((F2Poly(q), F2Poly(r)))
    }

    pub fn rem(self, d: F2Poly) -> Result<F2Poly> {
        Ok(self.div_rem(d)?.1)
    }

    pub fn gcd(self, o: F2Poly) -> F2Poly {
        let (mut a, mut b) = (self, o);
        while !b.is_zero() {
            let r = a.rem(b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a
    }

    pub fn derivative(self) -> F2Poly {
        // odd-degree terms survive, shifted down by one
        F2Poly((self.0 >> 1) & 0x5555_5555_5555_5555_5555_5555_5555_5555)
    }

    /// `g = sqrt(self)` when `self` is a square.
    pub fn sqrt(self) -> Option<F2Poly> {
        let mut out = 0u128;
        for i in 0..128 {
            if self.coeff(i) {
                if i % 2 == 1 {
                    return None;
                }
                out |= 1 << (i / 2);
            }
        }
        Some(F2Poly(out))
    }

    /// `x^n p(1/x)`; needs `deg p ≤ n`.
    pub fn reciprocal(self, n: u32) -> Result<F2Poly> {
        if self.deg_i() > i64::from(n) || n > 127 {
            return Err(Error::Model(format!(
                "cannot form x^{n} p(1/x) for p = {self}"
            )));
        }
        let mut out = 0u128;
        for i in 0..=n {
            if self.coeff(i) {
                out |= 1 << (n - i);
            }
        }
        Ok(F2Poly(out))
    }

    pub fn eval(self, field: &GfField, a: u32) -> u32 {
        let Some(d) = self.degree() else { return 0 };
        let mut acc = 0;
        for i in (0..=d).rev() {
            acc = field.mul(acc, a);
            if self.coeff(i) {
                acc ^= 1;
            }
        }
        acc
    }

    /// `self(x)^(2^n) mod m`, used to build `x^(2^n) - x`.
    fn square_mod(self, m: F2Poly) -> F2Poly {
        let s = self.rem(m).expect("nonzero modulus");
        let mut out = 0u128;
        for i in 0..64 {
            if s.coeff(i) {
                out |= 1 << (2 * i);
            }
        }
        F2Poly(out).rem(m).expect("nonzero modulus")
    }

    /// Distinct-degree split of a squarefree polynomial: `(d, product of the
    /// irreducible factors of degree d)`.
    pub fn distinct_degree(self) -> Vec<(u32, F2Poly)> {
        let mut out = Vec::new();
        let mut f = self;
        let mut xp = F2Poly::X;
        let mut d = 0;
        while f.deg_i() > 0 {
            d += 1;
            if 2 * d > f.degree().unwrap() {
                out.push((f.degree().unwrap(), f));
                break;
            }
            xp = xp.square_mod(f);
            let g = f.gcd(xp + F2Poly::X);
            if g.deg_i() > 0 {
                out.push((d, g));
                f = f.div_rem(g).unwrap().0;
                xp = xp.rem(f).unwrap();
            }
        }
        out
    }

    /// Squarefree decomposition `self = prod s_i^i`.
    pub fn squarefree_parts(self) -> Vec<(F2Poly, u32)> {
        let mut out = Vec::new();
        sqf_rec(self, 1, &mut out);
        out.sort_by_key(|&(_, e)| e);
        let mut merged: Vec<(F2Poly, u32)> = Vec::new();
        for (p, e) in out {
            match merged.last_mut() {
                Some(last) if last.1 == e => last.0 = last.0.try_mul(p).expect("factor of input"),
                _ => merged.push((p, e)),
            }
        }
        merged
    }

    pub fn is_irreducible(self) -> bool {
        match self.degree() {
            None | Some(0) => false,
            Some(d) => {
                self.gcd(self.derivative()) == F2Poly::ONE
                    && self.distinct_degree() == vec![(d, self)]
            }
        }
    }

    pub fn format_var(self, var: char) -> String {
        let Some(d) = self.degree() else {
            return "0".into();
        };
        let mut terms = Vec::new();
        for i in (0..=d).rev() {
            if self.coeff(i) {
                terms.push(match i {
                    0 => "1".to_string(),
                    1 => var.to_string(),
                    _ => format!("{var}^{i}"),
                });
            }
        }
        terms.join("+")
    }
}

fn sqf_rec(f: F2Poly, mult: u32, out: &mut Vec<(F2Poly, u32)>) {
    if f.deg_i() <= 0 {
        return;
    }
    let d = f.derivative();
    if d.is_zero() {
        sqf_rec(f.sqrt().expect("zero derivative means square"), 2 * mult, out);
        return;
    }
    let mut c = f.gcd(d);
    let mut w = f.div_rem(c).unwrap().0;
    let mut i = 1;
    while w.deg_i() > 0 {
        let y = w.gcd(c);
        let z = w.div_rem(y).unwrap().0;
        if z.deg_i() > 0 {
            out.push((z, i * mult));
        }
        w = y;
        c = c.div_rem(y).unwrap().0;
        i += 1;
    }
    if c.deg_i() > 0 {
        sqf_rec(c.sqrt().expect("remaining cofactor is a square"), 2 * mult, out);
    }
}

fn overflow() -> Error {
    Error::OutOfRange("F_2[x] degree exceeds 127".into())
}

fn clmul128(a: u128, b: u128) -> u128 {
    let mut out = 0u128;
    let mut a = a;
    let mut i = 0;
    while a != 0 {
        if a & 1 == 1 {
            out ^= b << i;
        }
        a >>= 1;
        i += 1;
    }
    out
}

// addition in characteristic 2 is XOR
#[allow(clippy::suspicious_arithmetic_impl)]
impl Add for F2Poly {
    type Output = F2Poly;
    fn add(self, o: F2Poly) -> F2Poly {
        F2Poly(self.0 ^ o.0)
    }
}

#[allow(clippy::suspicious_op_assign_impl)]
impl AddAssign for F2Poly {
    fn add_assign(&mut self, o: F2Poly) {
        self.0 ^= o.0;
    }
}

impl fmt::Display for F2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_var('x'))
    }
}

impl fmt::Debug for F2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F2Poly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(bits: u128) -> F2Poly {
        F2Poly(bits)
    }

    #[test]
    fn arithmetic() {
        let a = p(0b11); // x+1
        assert_eq!(a.try_mul(a).unwrap(), p(0b101));
        assert_eq!(p(0b101).div_rem(a).unwrap(), (a, F2Poly::ZERO));
        assert_eq!(p(0b1011).derivative(), p(0b101));
        assert_eq!(p(0b10011).reciprocal(4).unwrap(), p(0b11001));
        assert!(F2Poly::monomial(127).unwrap().try_mul(F2Poly::X).is_err());
    }

    #[test]
    fn factor_shapes() {
        let f = p(0b1100001); // x^6+x^5+1
        assert!(f.is_irreducible());
        assert!(!p(0b101).is_irreducible());
        let g = p(0b111).try_mul(p(0b1011)).unwrap().try_mul(p(0b11)).unwrap();
        assert_eq!(
            g.distinct_degree(),
            vec![(1, p(0b11)), (2, p(0b111)), (3, p(0b1011))]
        );
        let h = p(0b11).try_pow(3).unwrap().try_mul(p(0b111)).unwrap();
        assert_eq!(h.squarefree_parts(), vec![(p(0b111), 1), (p(0b11), 3)]);
    }
}
