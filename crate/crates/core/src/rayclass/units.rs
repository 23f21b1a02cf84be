//! `(F_{2^d}[[t]] / t^m)^*` as a direct sum of cyclic groups.
//!
//! Generators: a primitive constant (order `2^d - 1`, dropped when `d = 1`)
//! and `1 + beta_k t^i` for odd `i < m` and `beta_k = w^k`, of order
//! `2^{ceil(log2(m/i))}`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{GfField, TruncSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum UnitGenerator {
    /// The constant `zeta`.
    Teichmuller { zeta: u32 },
    /// `1 + coeff * t^index`.
    OneUnit { coeff: u32, index: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalUnitGroup {
    pub d: u32,
    pub m: usize,
    pub gens: Vec<UnitGenerator>,
    pub orders: Vec<u64>,
}

fn ceil_log2_ratio(m: usize, i: usize) -> u32 {
    let mut e = 0;
    while i << e < m {
        e += 1;
    }
    e
}

pub fn unit_group_structure(d: u32, m: usize) -> Result<LocalUnitGroup> {
    if m == 0 {
        return Err(Error::OutOfRange("unit group precision 0".into()));
    }
    if d as usize * (m - 1) > 64 {
        return Err(Error::OutOfRange(format!("d(m-1) = {} > 64", d as usize * (m - 1))));
    }
    let fld = GfField::get(d)?;
    let mut gens = Vec::new();
    let mut orders = Vec::new();
    if d > 1 {
        gens.push(UnitGenerator::Teichmuller {
            zeta: fld.primitive(),
        });
        orders.push(u64::from(fld.size() - 1));
    }
    for i in (1..m).step_by(2) {
        let ord = 1u64 << ceil_log2_ratio(m, i);
        for k in 0..d {
            gens.push(UnitGenerator::OneUnit {
                coeff: 1 << k,
                index: i,
            });
            orders.push(ord);
        }
    }
    Ok(LocalUnitGroup { d, m, gens, orders })
}

impl LocalUnitGroup {
    pub fn field(&self) -> Arc<GfField> {
        GfField::get(self.d).expect("validated at construction")
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    pub fn order(&self) -> u128 {
        self.orders.iter().map(|&o| u128::from(o)).product()
    }

    pub fn exponent(&self) -> u64 {
        self.orders
            .iter()
            .fold(1u64, |acc, &o| acc / num_integer::gcd(acc, o) * o)
    }

    pub fn generator_series(&self, j: usize) -> TruncSeries {
        let fld = self.field();
        match self.gens[j] {
            UnitGenerator::Teichmuller { zeta } => {
                TruncSeries::new(&fld, vec![zeta], self.m).expect("valid")
            }
            UnitGenerator::OneUnit { coeff, index } => {
                TruncSeries::one_plus(&fld, coeff, index, self.m).expect("valid")
            }
        }
    }

    /// `prod g_j^{e_j}`.
    pub fn reconstruct(&self, e: &[i64]) -> TruncSeries {
        let fld = self.field();
        let mut acc = TruncSeries::one(&fld, self.m).expect("valid");
        for (j, &ej) in e.iter().enumerate() {
            let ej = ej.rem_euclid(self.orders[j] as i64);
            if ej != 0 {
                acc = acc
                    .mul(&self.generator_series(j).pow(ej).expect("unit"))
                    .expect("same shape");
            }
        }
        acc
    }

    /// Exponents of `u` (truncated to precision `m`) over the generators,
    /// reduced modulo the generator orders.
    pub fn discrete_log(&self, u: &TruncSeries) -> Result<Vec<i64>> {
        let fld = self.field();
        if **u.field() != *fld {
            return Err(Error::MixedFields(u.field().describe(), fld.describe()));
        }
        if u.precision() < self.m {
            return Err(Error::Precondition(format!(
                "unit known to precision {}, group needs {}",
                u.precision(),
                self.m
            )));
        }
        if !u.is_unit() {
            return Err(Error::NotAUnit);
        }
        let mut v = TruncSeries::new(&fld, u.coeffs().to_vec(), self.m)?;
        let mut e = vec![0i64; self.rank()];
        let mut offset = 0;
        if self.d > 1 {
            let c0 = v.coeff(0);
            e[0] = i64::from(fld.log(c0)?);
            v = v.scale(fld.inv(c0)?);
            offset = 1;
        }
        for j in 1..self.m {
            let c = v.coeff(j);
            if c == 0 {
                continue;
            }
            let (mut i, mut s) = (j, 0u32);
            while i % 2 == 0 {
                i /= 2;
                s += 1;
            }
            // (1 + b t^i)^{2^s} = 1 + b^{2^s} t^j
            let mut b = c;
            for _ in 0..s {
                b = fld.sqrt(b);
            }
            let block = offset + (i / 2) * self.d as usize;
            for k in 0..self.d as usize {
                if (b >> k) & 1 == 1 {
                    e[block + k] += 1 << s;
                    let g = self.generator_series(block + k).pow_u(1 << s);
                    v = v.mul(&g.inv()?)?;
                }
            }
            debug_assert_eq!(v.coeff(j), 0);
        }
        for (x, &o) in e.iter_mut().zip(&self.orders) {
            *x = x.rem_euclid(o as i64);
        }
        Ok(e)
    }

    /// `Z_a x Z_b x ...` in generator order.
    pub fn describe(&self) -> String {
        if self.orders.is_empty() {
            return "1".into();
        }
        self.orders
            .iter()
            .map(|o| format!("Z_{o}"))
            .collect::<Vec<_>>()
            .join(" x ")
    }

    /// Generator `j` in the notation of the tables, with `t` renamed.
    pub fn generator_label(&self, j: usize, t: &str) -> String {
        let fld = self.field();
        match self.gens[j] {
            UnitGenerator::Teichmuller { zeta } => fld.format(zeta),
            UnitGenerator::OneUnit { coeff, index } => {
                let c = fld.format(coeff);
                let c = if c == "1" {
                    String::new()
                } else if c.contains('+') {
                    format!("({c})")
                } else {
                    c
                };
                let tp = if index == 1 {
                    t.to_string()
                } else {
                    format!("{t}^{index}")
                };
                format!("1+{c}{tp}")
            }
        }
    }

    /// Exponent vector as a product such as `(1+t)^3(1+t^3)`; `1` if trivial.
    pub fn format_element(&self, e: &[i64], t: &str) -> String {
        let parts: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(j, &x)| {
                let g = format!("({})", self.generator_label(j, t));
                if x == 1 {
                    g
                } else {
                    format!("{g}^{x}")
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.concat()
        }
    }
}

impl fmt::Display for LocalUnitGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}
