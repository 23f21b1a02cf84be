use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::poly::IntPoly;
use super::resultant::radical;
use crate::error::{Error, Result};

/// The real number `a + b*sqrt(2)` with integer `a`, `b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadValue {
    pub a: BigInt,
    pub b: BigInt,
}

impl QuadValue {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        QuadValue {
            a: a.into(),
            b: b.into(),
        }
    }

    pub fn integer(a: impl Into<BigInt>) -> Self {
        Self::new(a, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn sign(&self) -> Ordering {
        let sa = self.a.sign_ord();
        let sb = self.b.sign_ord();
        match (sa, sb) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (x, y) if x == y => x,
            _ => {
                // Opposite signs: compare a^2 with 2 b^2.
                let a2 = &self.a * &self.a;
                let b2 = &self.b * &self.b * 2;
                match a2.cmp(&b2) {
                    Ordering::Equal => Ordering::Equal,
                    Ordering::Greater => sa,
                    Ordering::Less => sb,
                }
            }
        }
    }

    fn mul(&self, o: &QuadValue) -> QuadValue {
        QuadValue {
            a: &self.a * &o.a + &self.b * &o.b * 2,
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }
}

trait SignOrd {
    fn sign_ord(&self) -> Ordering;
}

impl SignOrd for BigInt {
    fn sign_ord(&self) -> Ordering {
        self.cmp(&BigInt::zero())
    }
}

/// Exact value of `p` at `x`.
pub fn eval_quad(p: &IntPoly, x: &QuadValue) -> QuadValue {
    let mut acc = QuadValue::integer(0);
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(x);
        acc.a += c;
    }
    acc
}

/// Sturm chain of a squarefree polynomial, with signed pseudo-remainders
/// and positive content removed at every step.
pub fn sturm_chain(p: &IntPoly) -> Vec<IntPoly> {
    let mut chain = vec![p.clone()];
    if p.is_constant() {
        return chain;
    }
    chain.push(p.derivative());
    loop {
        let n = chain.len();
        let (a, b) = (&chain[n - 2], &chain[n - 1]);
        let delta = a.degree().unwrap() - b.degree().unwrap();
        let mut r = a.pseudo_rem(b);
        // prem multiplies by lc(b)^(delta+1); undo a negative factor.
        if b.lc().is_negative() && (delta + 1) % 2 == 1 {
            r = -r;
        }
        if r.is_zero() {
            break;
        }
        let r = -r.primitive_part();
        let done = r.is_constant();
        chain.push(r);
        if done {
            break;
        }
    }
    chain
}

fn sign_changes(chain: &[IntPoly], x: &QuadValue) -> usize {
    let mut last = Ordering::Equal;
    let mut count = 0;
    for p in chain {
        let s = eval_quad(p, x).sign();
        if s == Ordering::Equal {
            continue;
        }
        if last != Ordering::Equal && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Number of distinct real roots of `h` in the closed interval `[lo, hi]`.
pub fn count_distinct_roots_in(h: &IntPoly, lo: &QuadValue, hi: &QuadValue) -> Result<usize> {
    let r = radical(h)?;
    if r.is_constant() {
        return Ok(0);
    }
    let chain = sturm_chain(&r);
    let (vl, vh) = (sign_changes(&chain, lo), sign_changes(&chain, hi));
    let at_lo = usize::from(eval_quad(&r, lo).is_zero());
    Ok(vl.saturating_sub(vh) + at_lo)
}

fn weil_endpoints(q: u64) -> Result<(QuadValue, QuadValue)> {
    if q != 2 {
        return Err(Error::UnsupportedField(q));
    }
    Ok((QuadValue::new(0, -2), QuadValue::new(0, 2)))
}

/// Distinct real roots of `h` inside `[-2 sqrt q, 2 sqrt q]` (only `q = 2`).
pub fn count_roots_in_weil_interval(h: &IntPoly, q: u64) -> Result<usize> {
    let (lo, hi) = weil_endpoints(q)?;
    count_distinct_roots_in(h, &lo, &hi)
}

/// True iff every complex root of `h` is real and lies in `[-2 sqrt q, 2 sqrt q]`.
pub fn all_roots_in_interval(h: &IntPoly, q: u64) -> Result<bool> {
    let n = count_roots_in_weil_interval(h, q)?;
    Ok(n == radical(h)?.degree().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quad_signs() {
        assert_eq!(QuadValue::new(3, -2).sign(), Ordering::Greater); // 3 > 2.83
        assert_eq!(QuadValue::new(2, -2).sign(), Ordering::Less);
        assert_eq!(QuadValue::new(-3, 2).sign(), Ordering::Less);
        assert_eq!(QuadValue::new(0, 0).sign(), Ordering::Equal);
        assert_eq!(QuadValue::new(0, -1).sign(), Ordering::Less);
    }

    #[test]
    fn root_at_endpoint_counts() {
        // t^2 - 8 has roots exactly at the endpoints.
        let h = IntPoly::from_i64s(&[-8, 0, 1]);
        assert_eq!(count_roots_in_weil_interval(&h, 2).unwrap(), 2);
        // t^2 - 9 does not.
        let h = IntPoly::from_i64s(&[-9, 0, 1]);
        assert_eq!(count_roots_in_weil_interval(&h, 2).unwrap(), 0);
    }

    #[test]
    fn complex_roots_rejected() {
        let h = IntPoly::from_i64s(&[1, 0, 1]);
        assert_eq!(count_roots_in_weil_interval(&h, 2).unwrap(), 0);
        assert!(!all_roots_in_interval(&h, 2).unwrap());
        assert!(count_roots_in_weil_interval(&h, 3).is_err());
    }
}
