use std::fmt;
use std::sync::Arc;

use super::field::GfField;
use crate::error::{Error, Result};

/// Element of `F_{2^m}[[t]] / (t^prec)`.
#[derive(Clone)]
pub struct TruncSeries {
    field: Arc<GfField>,
    coeffs: Vec<u32>,
}

impl TruncSeries {
    /// Coefficients beyond `prec` are dropped, missing ones are zero.
    pub fn new(field: &Arc<GfField>, mut coeffs: Vec<u32>, prec: usize) -> Result<Self> {
        if prec == 0 {
            return Err(Error::OutOfRange("series precision 0".into()));
        }
        for &c in &coeffs {
            field.check(c)?;
        }
        coeffs.resize(prec, 0);
        Ok(TruncSeries {
            field: field.clone(),
            coeffs,
        })
    }

    pub fn one(field: &Arc<GfField>, prec: usize) -> Result<Self> {
        Self::new(field, vec![1], prec)
    }

    /// `1 + c t^i`.
    pub fn one_plus(field: &Arc<GfField>, c: u32, i: usize, prec: usize) -> Result<Self> {
        let mut v = vec![0; prec.max(1)];
        v[0] = 1;
        if i < prec {
            v[i] ^= c;
        }
        Self::new(field, v, prec)
    }

    pub fn field(&self) -> &Arc<GfField> {
        &self.field
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_unit(&self) -> bool {
        self.coeffs[0] != 0
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// Index of the first nonzero coefficient, `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }

    fn compatible(&self, o: &TruncSeries) -> Result<()> {
        if *self.field != *o.field {
            return Err(Error::MixedFields(self.field.describe(), o.field.describe()));
        }
        if self.precision() != o.precision() {
            return Err(Error::Precondition(format!(
                "series precisions differ ({} vs {})",
                self.precision(),
                o.precision()
            )));
        }
        Ok(())
    }

    fn wrap(&self, coeffs: Vec<u32>) -> TruncSeries {
        TruncSeries {
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn add(&self, o: &TruncSeries) -> Result<TruncSeries> {
        self.compatible(o)?;
        Ok(self.wrap(
            self.coeffs
                .iter()
                .zip(&o.coeffs)
                .map(|(a, b)| a ^ b)
                .collect(),
        ))
    }

    pub fn mul(&self, o: &TruncSeries) -> Result<TruncSeries> {
        self.compatible(o)?;
        Ok(self.mul_unchecked(o))
    }

    pub(crate) fn mul_unchecked(&self, o: &TruncSeries) -> TruncSeries {
        let n = self.precision();
        let f = &self.field;
        let mut out = vec![0u32; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs[..n - i].iter().enumerate() {
                out[i + j] ^= f.mul(a, b);
            }
        }
        self.wrap(out)
    }

    pub fn scale(&self, c: u32) -> TruncSeries {
        self.wrap(self.coeffs.iter().map(|&a| self.field.mul(a, c)).collect())
    }

    pub fn inv(&self) -> Result<TruncSeries> {
        let n = self.precision();
        let f = &self.field;
        let c0inv = f.inv(self.coeffs[0]).map_err(|_| Error::NotAUnit)?;
        let mut out = vec![0u32; n];
        out[0] = c0inv;
        for k in 1..n {
            let mut s = 0;
            for j in 1..=k {
                s ^= f.mul(self.coeffs[j], out[k - j]);
            }
            out[k] = f.mul(s, c0inv);
        }
        Ok(self.wrap(out))
    }

    /// `self^e`; negative exponents need a unit.
    pub fn pow(&self, e: i64) -> Result<TruncSeries> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        Ok(base.pow_u(e.unsigned_abs()))
    }

    pub fn pow_u(&self, e: u64) -> TruncSeries {
        let mut acc = self.wrap({
            let mut v = vec![0; self.precision()];
            v[0] = 1;
            v
        });
        let mut b = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul_unchecked(&b);
            }
        }
        acc
    }

    /// Coefficient-wise Frobenius composed with `t -> t^2`, i.e. squaring.
    pub fn square(&self) -> TruncSeries {
        let n = self.precision();
        let mut out = vec![0u32; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if 2 * i < n {
                out[2 * i] = self.field.square(a);
            }
        }
        self.wrap(out)
    }
}

impl PartialEq for TruncSeries {
    fn eq(&self, o: &Self) -> bool {
        *self.field == *o.field && self.coeffs == o.coeffs
    }
}

impl Eq for TruncSeries {}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let coef = self.field.format(c);
            let coef = if c == 1 {
                String::new()
            } else if coef.contains('+') {
                format!("({coef})")
            } else {
                coef
            };
            terms.push(match (i, coef.is_empty()) {
                (0, true) => "1".to_string(),
                (0, false) => coef,
                (1, _) => format!("{coef}t"),
                _ => format!("{coef}t^{i}"),
            });
        }
        if terms.is_empty() {
            terms.push("0".into());
        }
        write!(f, "{} + O(t^{})", terms.join(" + "), self.precision())
    }
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precision_and_field_checks() {
        let f2 = GfField::get(1).unwrap();
        let f4 = GfField::get(2).unwrap();
        let a = TruncSeries::one(&f2, 4).unwrap();
        let b = TruncSeries::one(&f2, 3).unwrap();
        let c = TruncSeries::one(&f4, 4).unwrap();
        assert!(a.mul(&b).is_err());
        assert!(matches!(a.mul(&c), Err(Error::MixedFields(..))));
        assert!(TruncSeries::new(&f2, vec![2], 3).is_err());
    }

    #[test]
    fn display() {
        let f2 = GfField::get(1).unwrap();
        let s = TruncSeries::new(&f2, vec![1, 0, 1], 4).unwrap();
        assert_eq!(s.to_string(), "1 + t^2 + O(t^4)");
    }
}
