//! Real Weil polynomials, L-polynomials, point counts and place counts.
//!
//! With `L(t) = t^g h(qt + 1/t) = prod (1 - alpha_i t)`, the point counts are
//! `N_n = q^n + 1 - sum alpha_i^n` and the place counts satisfy
//! `N_e = sum_{d | e} d a_d`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{divisors, moebius, IntPoly};
use crate::error::{Error, Result};

/// Monic `h` of degree `g` over F_q.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealWeilPoly {
    pub h: IntPoly,
    pub q: u64,
}

impl RealWeilPoly {
    pub fn new(h: IntPoly, q: u64) -> Result<Self> {
        if !h.is_monic() {
            return Err(Error::NotMonic);
        }
        Ok(RealWeilPoly { h, q })
    }

    pub fn genus(&self) -> usize {
        self.h.degree().unwrap_or(0)
    }
}

/// `L(t)` of degree `2g` with `L(0) = 1` and `b_{2g-i} = q^{g-i} b_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LPoly {
    pub l: IntPoly,
    pub q: u64,
}

impl LPoly {
    pub fn new(l: IntPoly, q: u64) -> Result<Self> {
        let deg = l.degree().ok_or(Error::ZeroPolynomial("L-polynomial"))?;
        if deg % 2 == 1 {
            return Err(Error::AsymmetricL(deg));
        }
        if !l.coeff(0).is_one() {
            return Err(Error::AsymmetricL(0));
        }
        let g = deg / 2;
        let qb = BigInt::from(q);
        for i in 0..=g {
            let expect = l.coeff(i) * num_traits::pow(qb.clone(), g - i);
            if l.coeff(2 * g - i) != expect {
                return Err(Error::AsymmetricL(2 * g - i));
            }
        }
        Ok(LPoly { l, q })
    }

    pub fn genus(&self) -> usize {
        self.l.degree().unwrap_or(0) / 2
    }

    /// `L(1)`, the class number.
    pub fn at_one(&self) -> BigInt {
        self.l.coeffs().iter().sum()
    }
}

/// Place counts `a_1, ..., a_dmax`.
///
/// Vectors reconstructed from candidate data may be non-integral or
/// negative; those degrees are listed instead of being rounded away.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AVector {
    pub a: Vec<i64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub nonintegral: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub negative: Vec<usize>,
}

impl AVector {
    pub fn from_counts(a: Vec<i64>) -> Self {
        let negative = (1..=a.len()).filter(|&d| a[d - 1] < 0).collect();
        AVector {
            a,
            nonintegral: vec![],
            negative,
        }
    }

    pub fn is_valid(&self) -> bool {
        self.nonintegral.is_empty() && self.negative.is_empty()
    }

    /// `a_d` for `1 <= d <= len`.
    pub fn get(&self, d: usize) -> i64 {
        self.a[d - 1]
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    pub fn prefix(&self, n: usize) -> &[i64] {
        &self.a[..n.min(self.a.len())]
    }
}

fn to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64()
        .ok_or_else(|| Error::OutOfRange(format!("value {x} does not fit in 64 bits")))
}

/// `t^g h(qt + 1/t)`.
pub fn l_from_h(h: &RealWeilPoly) -> Result<LPoly> {
    let g = h.genus();
    let qt2 = IntPoly::new(vec![BigInt::one(), BigInt::zero(), BigInt::from(h.q)]);
    let mut l = IntPoly::zero();
    let mut pw = IntPoly::one();
    for i in 0..=g {
        l = &l + &pw.shift(g - i).scale(&h.h.coeff(i));
        pw = &pw * &qt2;
    }
    LPoly::new(l, h.q)
}

/// Inverse of [`l_from_h`].
pub fn h_from_l(l: &LPoly) -> Result<RealWeilPoly> {
    let g = l.genus();
    let qb = BigInt::from(l.q);
    // b_k = sum_j c_{g-k+2j} binom(g-k+2j, j) q^j, solved for c_{g-k}.
    let mut c = vec![BigInt::zero(); g + 1];
    for k in 0..=g {
        let mut acc = l.l.coeff(k);
        let mut j = 1;
        while g - k + 2 * j <= g {
            let i = g - k + 2 * j;
            acc -= &c[i] * binom(i, j) * num_traits::pow(qb.clone(), j);
            j += 1;
        }
        c[g - k] = acc;
    }
    let h = RealWeilPoly::new(IntPoly::new(c), l.q)?;
    if l_from_h(&h)?.l != l.l {
        return Err(Error::AsymmetricL(0));
    }
    Ok(h)
}

fn binom(n: usize, k: usize) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

/// Power sums `s_1..s_nmax` of the reciprocal roots of `L`.
pub fn power_sums(l: &IntPoly, nmax: usize) -> Vec<BigInt> {
    let mut s: Vec<BigInt> = Vec::with_capacity(nmax);
    for n in 1..=nmax {
        let mut acc = -(l.coeff(n) * BigInt::from(n));
        for k in 1..n {
            acc -= l.coeff(k) * &s[n - k - 1];
        }
        s.push(acc);
    }
    s
}

/// `N_1..N_nmax`.
pub fn nvector_from_l(l: &LPoly, nmax: usize) -> Result<Vec<i64>> {
    let q = BigInt::from(l.q);
    power_sums(&l.l, nmax)
        .iter()
        .enumerate()
        .map(|(i, s)| to_i64(&(num_traits::pow(q.clone(), i + 1) + 1 - s)))
        .collect()
}

/// Lower half of `L` from `N_1..N_g`, completed by the functional equation.
/// Fails if a coefficient is not integral.
pub fn l_from_nvector(n: &[i64], g: usize, q: u64) -> Result<LPoly> {
    if n.len() < g {
        return Err(Error::Precondition(format!(
            "need N_1..N_{g}, got {} values",
            n.len()
        )));
    }
    let qb = BigInt::from(q);
    let s: Vec<BigInt> = (1..=g)
        .map(|k| num_traits::pow(qb.clone(), k) + 1 - n[k - 1])
        .collect();
    let mut b = vec![BigInt::one()];
    for k in 1..=g {
        let mut acc = s[k - 1].clone();
        for j in 1..k {
            acc += &b[j] * &s[k - j - 1];
        }
        let (quo, rem) = (-acc).div_rem(&BigInt::from(k));
        if !rem.is_zero() {
            return Err(Error::GenusMismatch(format!(
                "L coefficient b_{k} is not integral"
            )));
        }
        b.push(quo);
    }
    let mut coeffs = b.clone();
    for i in (0..g).rev() {
        coeffs.push(&b[i] * num_traits::pow(qb.clone(), g - i));
    }
    LPoly::new(IntPoly::new(coeffs), q)
}

/// `a_d = (1/d) sum_{e | d} mu(d/e) N_e`, flagging non-integral or negative entries.
pub fn avector_from_nvector(n: &[i64]) -> AVector {
    let mut a = Vec::with_capacity(n.len());
    let mut nonintegral = Vec::new();
    let mut negative = Vec::new();
    for d in 1..=n.len() {
        let s: i64 = divisors(d as u64)
            .into_iter()
            .map(|e| moebius(d as u64 / e).expect("positive") as i64 * n[e as usize - 1])
            .sum();
        if s % d as i64 != 0 {
            nonintegral.push(d);
        }
        let v = s.div_euclid(d as i64);
        if s < 0 {
            negative.push(d);
        }
        a.push(v);
    }
    AVector {
        a,
        nonintegral,
        negative,
    }
}

/// `N_e = sum_{d | e} d a_d`.
pub fn nvector_from_avector(a: &[i64]) -> Vec<i64> {
    (1..=a.len())
        .map(|e| {
            divisors(e as u64)
                .into_iter()
                .map(|d| d as i64 * a[d as usize - 1])
                .sum()
        })
        .collect()
}

/// Place counts to depth `dmax` straight from `h`.
pub fn avector_from_h(h: &RealWeilPoly, dmax: usize) -> Result<AVector> {
    let l = l_from_h(h)?;
    Ok(avector_from_nvector(&nvector_from_l(&l, dmax)?))
}

/// `h(q + 1) = L(1)`.
pub fn class_number(h: &RealWeilPoly) -> Result<BigInt> {
    let v = h.h.eval(&BigInt::from(h.q + 1));
    if !v.is_positive() {
        return Err(Error::InvalidWeil(format!("h(q+1) = {v} is not positive")));
    }
    Ok(v)
}

/// Everything the `zeta` command prints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZetaReport {
    pub q: u64,
    pub g: usize,
    pub h: IntPoly,
    #[serde(rename = "L")]
    pub l: IntPoly,
    #[serde(rename = "N")]
    pub n: Vec<i64>,
    pub a: Vec<i64>,
}

pub fn zeta_report(h: &RealWeilPoly, dmax: usize) -> Result<ZetaReport> {
    if h.q != 2 {
        return Err(Error::UnsupportedField(h.q));
    }
    let l = l_from_h(h)?;
    let n = nvector_from_l(&l, dmax)?;
    let a = avector_from_nvector(&n);
    Ok(ZetaReport {
        q: h.q,
        g: h.genus(),
        h: h.h.clone(),
        l: l.l,
        n,
        a: a.a,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binom(5, 2), BigInt::from(10));
        assert_eq!(binom(4, 0), BigInt::from(1));
    }

    #[test]
    fn lpoly_validation() {
        assert!(LPoly::new(IntPoly::from_i64s(&[1, 2, 2]), 2).is_ok());
        assert!(matches!(
            LPoly::new(IntPoly::from_i64s(&[1, 2, 3]), 2),
            Err(Error::AsymmetricL(_))
        ));
        assert!(LPoly::new(IntPoly::from_i64s(&[1, 2]), 2).is_err());
        assert!(LPoly::new(IntPoly::from_i64s(&[2, 0, 2]), 2).is_err());
    }

    #[test]
    fn flags_bad_vectors() {
        let a = avector_from_nvector(&[3, 4]);
        assert_eq!(a.nonintegral, vec![2]);
        let a = avector_from_nvector(&[5, 1]);
        assert_eq!(a.negative, vec![2]);
        assert!(!a.is_valid());
    }
}
