use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;
use super::poly::IntPoly;
use crate::error::{Error, Result};

fn pow_big(b: &BigInt, e: usize) -> BigInt {
    num_traits::pow(b.clone(), e)
}

/// Resultant in the Sylvester-determinant convention,
/// `Res(f, g) = lc(f)^deg g * prod g(alpha)` over the roots `alpha` of `f`.
///
/// Computed with the subresultant pseudo-remainder sequence.
pub fn resultant(f: &IntPoly, g: &IntPoly) -> Result<BigInt> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial("resultant"));
    }
    let (mut a, mut b) = (f.clone(), g.clone());
    let mut s = BigInt::one();
    if a.degree() < b.degree() {
        let (da, db) = (a.degree().unwrap(), b.degree().unwrap());
        std::mem::swap(&mut a, &mut b);
        if (da * db) % 2 == 1 {
            s = -s;
        }
    }
    let (da0, db0) = (a.degree().unwrap(), b.degree().unwrap());
    if db0 == 0 {
        // Res(a, c) = c^deg a for a constant c.
        return Ok(s * pow_big(&b.lc(), da0));
    }
    let (ca, cb) = (a.content(), b.content());
    a = a.div_scalar(&ca);
    b = b.div_scalar(&cb);
    let t = pow_big(&ca, db0) * pow_big(&cb, da0);
    let mut gg = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let da = a.degree().unwrap();
        let db = b.degree().unwrap();
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            s = -s;
        }
        let r = a.pseudo_rem(&b);
        a = b;
        if r.is_zero() {
            return Ok(BigInt::zero());
        }
        let denom = &gg * pow_big(&h, delta);
        b = r.div_scalar(&denom);
        gg = a.lc();
        h = if delta == 0 {
            h
        } else {
            pow_big(&gg, delta) / pow_big(&h, delta - 1)
        };
        if b.degree().unwrap() == 0 {
            let da = a.degree().unwrap();
            let hh = pow_big(&b.lc(), da) / pow_big(&h, da - 1);
            return Ok(s * t * hh);
        }
    }
}

/// `(-1)^(n(n-1)/2) Res(f, f') / lc(f)` for `n = deg f`.
pub fn discriminant(f: &IntPoly) -> Result<BigInt> {
    let n = match f.degree() {
        None => return Err(Error::ZeroPolynomial("discriminant")),
        Some(0) => return Err(Error::ConstantPolynomial("discriminant")),
        Some(n) => n,
    };
    let r = resultant(f, &f.derivative())?;
    let d = r / f.lc();
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -d } else { d })
}

/// Gcd in Z[t]: gcd of the contents times the primitive gcd, with positive
/// leading coefficient.
pub fn poly_gcd(f: &IntPoly, g: &IntPoly) -> IntPoly {
    if f.is_zero() {
        return normalize_sign(g.clone());
    }
    if g.is_zero() {
        return normalize_sign(f.clone());
    }
    let c = f.content().gcd(&g.content());
    let (mut a, mut b) = (f.primitive_part(), g.primitive_part());
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        let r = a.pseudo_rem(&b);
        a = b;
        b = r.primitive_part();
    }
    normalize_sign(a.primitive_part().scale(&c))
}

fn normalize_sign(p: IntPoly) -> IntPoly {
    if p.lc().is_negative() {
        -p
    } else {
        p
    }
}

/// Squarefree part `f / gcd(f, f')`, made primitive with the sign of `lc(f)`.
pub fn radical(f: &IntPoly) -> Result<IntPoly> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("radical"));
    }
    if f.is_constant() {
        return Ok(IntPoly::constant(if f.lc().is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        }));
    }
    let g = poly_gcd(f, &f.derivative());
    let r = f
        .primitive_part()
        .div_exact(&g.primitive_part())
        .expect("gcd divides f")
        .primitive_part();
    Ok(if r.lc().is_negative() != f.lc().is_negative() {
        -r
    } else {
        r
    })
}

/// Rows `t^i f` (`i = deg g - 1, ..., 0`) then `t^j g` (`j = deg f - 1, ..., 0`),
/// columns from degree `deg f + deg g - 1` down to the constant term.
/// Its determinant is `resultant(f, g)`.
pub fn sylvester_matrix(f: &IntPoly, g: &IntPoly) -> IntMatrix {
    let m = f.degree().unwrap_or(0);
    let n = g.degree().unwrap_or(0);
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (p, count) in [(f, n), (g, m)] {
        for i in (0..count).rev() {
            let sh = p.shift(i);
            rows.push(
                (0..size)
                    .map(|col| sh.coeff(size - 1 - col))
                    .collect::<Vec<_>>(),
            );
        }
    }
    IntMatrix::from_rows(size, size, rows)
}

/// Nonnegative generator of `(f, g) ∩ Z`, read off the Hermite normal form
/// of the Sylvester lattice. Exact when one of the inputs is monic, which
/// covers every factor of a monic Weil polynomial.
pub fn reduced_resultant(f: &IntPoly, g: &IntPoly) -> Result<BigInt> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial("reduced resultant"));
    }
    if f.is_constant() {
        return Ok(f.lc().abs());
    }
    if g.is_constant() {
        return Ok(g.lc().abs());
    }
    if resultant(f, g)?.is_zero() {
        return Err(Error::NotCoprime);
    }
    let h = sylvester_matrix(f, g).hnf();
    let n = h.rows();
    Ok(h.get(n - 1, n - 1).abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn constant_and_trivial_cases() {
        assert_eq!(resultant(&p(&[3]), &p(&[1, 1, 1])).unwrap(), BigInt::from(9));
        assert_eq!(resultant(&p(&[1, 1]), &p(&[1, 1])).unwrap(), BigInt::zero());
        assert!(resultant(&p(&[]), &p(&[1])).is_err());
        assert!(discriminant(&p(&[5])).is_err());
    }

    #[test]
    fn radical_keeps_sign() {
        let f = -(&p(&[1, 3, 1]).pow(2) * &p(&[2, 1]));
        let r = radical(&f).unwrap();
        assert_eq!(r, -(&p(&[1, 3, 1]) * &p(&[2, 1])));
    }

    #[test]
    fn gcd_content() {
        let g = poly_gcd(&p(&[4, 4]), &p(&[6, 12, 6]));
        assert_eq!(g, p(&[2, 2]));
    }

    #[test]
    fn reduced_resultant_not_coprime() {
        let f = p(&[2, 1]);
        assert_eq!(
            reduced_resultant(&f, &(&f * &p(&[1, 1]))),
            Err(Error::NotCoprime)
        );
    }
}
