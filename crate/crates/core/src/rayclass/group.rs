//! Finite abelian quotients `Z^n / relations` via Smith normal form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::IntMatrix;

/// `Z_{d_1} + ... + Z_{d_r}` with `d_1 | d_2 | ...` (trivial factors
/// dropped), and the map from ambient exponent vectors onto it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteAbelianGroup {
    pub invariants: Vec<u64>,
    /// Column `i` gives component `i` of the projection.
    projection: Vec<Vec<i64>>,
}

impl FiniteAbelianGroup {
    /// `Z^n` modulo `orders` on the diagonal and the given relation rows.
    pub fn quotient(orders: &[u64], relations: &[Vec<i64>]) -> FiniteAbelianGroup {
        let n = orders.len();
        let mut rows: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                let mut r = vec![0i64; n];
                r[i] = orders[i] as i64;
                r
            })
            .collect();
        rows.extend(relations.iter().cloned());
        if n == 0 {
            return FiniteAbelianGroup {
                invariants: vec![],
                projection: vec![],
            };
        }
        let snf = IntMatrix::from_i64_rows(&rows).snf();
        let diag = snf.diagonal();
        let mut invariants = Vec::new();
        let mut projection = Vec::new();
        for (i, d) in diag.iter().enumerate() {
            let d = d.abs();
            if d.is_one() {
                continue;
            }
            assert!(!d.is_zero(), "diagonal relations make the quotient finite");
            invariants.push(d.to_u64().expect("group orders fit in 64 bits"));
            projection.push(
                (0..n)
                    .map(|r| {
                        snf.v
                            .get(r, i)
                            .mod_floor(&d)
                            .to_i64()
                            .expect("reduced entries are small")
                    })
                    .collect(),
            );
        }
        FiniteAbelianGroup {
            invariants,
            projection,
        }
    }

    pub fn order(&self) -> u128 {
        self.invariants.iter().map(|&d| u128::from(d)).product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariants.is_empty()
    }

    pub fn ambient_rank(&self) -> usize {
        self.projection.first().map_or(0, Vec::len)
    }

    /// Image of an ambient exponent vector.
    pub fn project(&self, x: &[i64]) -> Vec<i64> {
        self.invariants
            .iter()
            .zip(&self.projection)
            .map(|(&d, col)| {
                let s: BigInt = col
                    .iter()
                    .zip(x)
                    .map(|(&c, &xi)| BigInt::from(c) * xi)
                    .sum();
                s.mod_floor(&BigInt::from(d)).to_i64().expect("reduced")
            })
            .collect()
    }

    pub fn describe(&self) -> String {
        if self.invariants.is_empty() {
            return "trivial".into();
        }
        self.invariants
            .iter()
            .map(|d| format!("Z_{d}"))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_quotients() {
        // Z_4 x Z_2 modulo (1, 0): Z_2
        let g = FiniteAbelianGroup::quotient(&[4, 2], &[vec![1, 0]]);
        assert_eq!(g.invariants, vec![2]);
        assert_eq!(g.project(&[3, 0]), vec![0]);
        assert_ne!(g.project(&[0, 1]), vec![0]);
        // Z_4 x Z_2 modulo (2, 0): Z_2 x Z_2
        let g = FiniteAbelianGroup::quotient(&[4, 2], &[vec![2, 0]]);
        assert_eq!(g.invariants, vec![2, 2]);
        let g = FiniteAbelianGroup::quotient(&[6], &[]);
        assert_eq!(g.invariants, vec![6]);
        assert_eq!(g.project(&[7]).len(), 1);
        assert!(FiniteAbelianGroup::quotient(&[3], &[vec![1]]).is_trivial());
    }
}
