use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

pub const MAX_DEGREE: u32 = 16;

/// Carry-less product of two bit-polynomials over F_2.
pub fn clmul(a: u64, b: u64) -> u64 {
    let mut acc = 0u64;
    let mut a = a;
    let mut b = b;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        a <<= 1;
        b >>= 1;
    }
    acc
}

/// Degree of a nonzero bit-polynomial; `-1` for zero.
pub fn bit_degree(a: u64) -> i32 {
    63 - a.leading_zeros() as i32
}

/// Remainder of `a` modulo `m` over F_2.
pub fn bit_rem(a: u64, m: u64) -> u64 {
    let dm = bit_degree(m);
    let mut a = a;
    while bit_degree(a) >= dm {
        a ^= m << (bit_degree(a) - dm);
    }
    a
}

/// Irreducibility over F_2 by trial division with every polynomial of degree
/// up to half the degree.
pub fn is_irreducible(p: u64) -> bool {
    let d = bit_degree(p);
    if d < 1 {
        return false;
    }
    for q in 2u64..(1u64 << (d / 2 + 1)) {
        if bit_degree(q) >= 1 && bit_degree(q) <= d / 2 && bit_rem(p, q) == 0 {
            return false;
        }
    }
    true
}

fn default_modulus(m: u32) -> u64 {
    match m {
        1 => 0b11,
        4 => 0b1_0011,
        5 => 0b10_1001,
        6 => 0b110_0001,
        _ => ((1u64 << m)..(1u64 << (m + 1)))
            .find(|&p| is_irreducible(p))
            .expect("irreducible polynomials exist in every degree"),
    }
}

fn default_letter(m: u32) -> char {
    match m {
        4 => 'a',
        5 => 'b',
        6 => 'c',
        _ => 'w',
    }
}

/// The field F_{2^m} = F_2[x]/(modulus), with log/antilog tables and a
/// table of solutions of `z^2 + z = c`.
///
/// Elements are `u32` bitmasks in the polynomial basis `1, w, ..., w^{m-1}`
/// where `w` is the class of `x`.
pub struct GfField {
    m: u32,
    modulus: u64,
    letter: char,
    order: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    generator: u32,
    /// For `c` of trace zero, the smaller root of `z^2 + z = c`; `u32::MAX` otherwise.
    as_root: Vec<u32>,
}

type Cache = Mutex<HashMap<(u32, u64), Arc<GfField>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl GfField {
    /// F_{2^m} with the default modulus (x^4+x+1, x^5+x^3+1, x^6+x^5+1 for
    /// m = 4, 5, 6; otherwise the irreducible polynomial with the smallest bitmask).
    pub fn get(m: u32) -> Result<Arc<GfField>> {
        if m == 0 || m > MAX_DEGREE {
            return Err(Error::OutOfRange(format!("extension degree {m}")));
        }
        Self::with_modulus(m, default_modulus(m))
    }

    pub fn with_modulus(m: u32, modulus: u64) -> Result<Arc<GfField>> {
        if m == 0 || m > MAX_DEGREE {
            return Err(Error::OutOfRange(format!("extension degree {m}")));
        }
        if bit_degree(modulus) != m as i32 || !is_irreducible(modulus) {
            return Err(Error::Reducible(modulus, m));
        }
        let mut guard = cache().lock().expect("field cache poisoned");
        if let Some(f) = guard.get(&(m, modulus)) {
            return Ok(f.clone());
        }
        let f = Arc::new(Self::build(m, modulus));
        guard.insert((m, modulus), f.clone());
        Ok(f)
    }

    fn build(m: u32, modulus: u64) -> GfField {
        let size = 1usize << m;
        let order = (size - 1) as u32;
        let mulmod = |a: u32, b: u32| bit_rem(clmul(a as u64, b as u64), modulus) as u32;
        let mut generator = 0;
        let mut exp = vec![0u32; 2 * order as usize];
        'search: for g in 2u32..size as u32 {
            let mut x = 1u32;
            for k in 0..order {
                exp[k as usize] = x;
                x = mulmod(x, g);
                if x == 1 && k + 1 < order {
                    continue 'search;
                }
            }
            generator = g;
            break;
        }
        if m == 1 {
            generator = 1;
            exp[0] = 1;
        }
        for k in order as usize..2 * order as usize {
            exp[k] = exp[k - order as usize];
        }
        let mut log = vec![0u32; size];
        for k in 0..order {
            log[exp[k as usize] as usize] = k;
        }
        let mut as_root = vec![u32::MAX; size];
        for z in 0..size as u32 {
            let c = (mulmod(z, z) ^ z) as usize;
            if as_root[c] == u32::MAX {
                as_root[c] = z;
            }
        }
        GfField {
            m,
            modulus,
            letter: default_letter(m),
            order,
            exp,
            log,
            generator,
            as_root,
        }
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn letter(&self) -> char {
        self.letter
    }

    pub fn size(&self) -> u32 {
        1 << self.m
    }

    /// Primitive element used by the log tables.
    pub fn primitive(&self) -> u32 {
        self.generator
    }

    /// The class of `x` itself.
    pub fn gen(&self) -> u32 {
        if self.m == 1 {
            1
        } else {
            2
        }
    }

    pub fn contains(&self, x: u32) -> bool {
        x < self.size()
    }

    pub fn check(&self, x: u32) -> Result<u32> {
        if self.contains(x) {
            Ok(x)
        } else {
            Err(Error::NotInField { bits: x, m: self.m })
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }

    #[inline]
    pub fn square(&self, a: u32) -> u32 {
        self.mul(a, a)
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        let l = self.log[a as usize];
        Ok(self.exp[((self.order - l) % self.order) as usize])
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u32> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` for any integer `e` (`0^0 = 1`; negative powers of zero fail).
    pub fn pow(&self, a: u32, e: i64) -> Result<u32> {
        if a == 0 {
            return match e.cmp(&0) {
                std::cmp::Ordering::Equal => Ok(1),
                std::cmp::Ordering::Greater => Ok(0),
                std::cmp::Ordering::Less => Err(Error::DivisionByZero),
            };
        }
        let l = self.log[a as usize] as i64 * e.rem_euclid(self.order as i64);
        Ok(self.exp[(l % self.order as i64) as usize])
    }

    /// Discrete logarithm to the base [`primitive`](Self::primitive).
    pub fn log(&self, a: u32) -> Result<u32> {
        if a == 0 || !self.contains(a) {
            return Err(Error::NotAUnit);
        }
        Ok(self.log[a as usize])
    }

    pub fn frobenius(&self, a: u32) -> u32 {
        self.square(a)
    }

    /// The unique square root (Frobenius is bijective).
    pub fn sqrt(&self, a: u32) -> u32 {
        let mut x = a;
        for _ in 1..self.m {
            x = self.square(x);
        }
        x
    }

    /// Absolute trace to F_2, as 0 or 1.
    pub fn trace(&self, a: u32) -> u32 {
        let mut s = 0;
        let mut x = a;
        for _ in 0..self.m {
            s ^= x;
            x = self.square(x);
        }
        s
    }

    /// The smaller root of `z^2 + z = c`, if any.
    pub fn solve_as(&self, c: u32) -> Option<u32> {
        match self.as_root[c as usize] {
            u32::MAX => None,
            z => Some(z),
        }
    }

    /// Frobenius orbit `[a, a^2, a^4, ...]` in order of application.
    pub fn orbit(&self, a: u32) -> Vec<u32> {
        let mut out = vec![a];
        let mut x = self.square(a);
        while x != a {
            out.push(x);
            x = self.square(x);
        }
        out
    }

    /// Degree of the smallest subfield containing `a`.
    pub fn elem_degree(&self, a: u32) -> u32 {
        self.orbit(a).len() as u32
    }

    /// Minimal polynomial over F_2 as a bitmask.
    pub fn minpoly(&self, a: u32) -> u64 {
        // prod over the orbit of (X + c); coefficients land in F_2.
        let mut coeffs: Vec<u32> = vec![1];
        for c in self.orbit(a) {
            let mut next = vec![0u32; coeffs.len() + 1];
            for (i, &k) in coeffs.iter().enumerate() {
                next[i + 1] ^= k;
                next[i] ^= self.mul(k, c);
            }
            coeffs = next;
        }
        coeffs
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &k)| acc | ((k as u64 & 1) << i))
    }

    /// Evaluate a bit-polynomial over F_2 at `a`.
    pub fn eval_f2poly(&self, p: u64, a: u32) -> u32 {
        let mut acc = 0;
        for i in (0..=bit_degree(p).max(0)).rev() {
            acc = self.mul(acc, a);
            if (p >> i) & 1 == 1 {
                acc ^= 1;
            }
        }
        acc
    }

    /// Table of the embedding of `sub` into `self`: the generator `x` of `sub`
    /// goes to the root (smallest bitmask) of its modulus in `self`.
    pub fn embedding_from(&self, sub: &GfField) -> Result<Vec<u32>> {
        if !self.m.is_multiple_of(sub.m) {
            return Err(Error::MixedFields(sub.describe(), self.describe()));
        }
        let root = (0..self.size())
            .find(|&z| self.eval_f2poly(sub.modulus, z) == 0)
            .expect("subfield modulus splits in the extension");
        let mut powers = vec![1u32];
        for _ in 1..sub.m {
            let last = *powers.last().unwrap();
            powers.push(self.mul(last, root));
        }
        Ok((0..sub.size())
            .map(|bits| {
                (0..sub.m)
                    .filter(|i| (bits >> i) & 1 == 1)
                    .fold(0, |acc, i| acc ^ powers[i as usize])
            })
            .collect())
    }

    /// Coordinates of `a` in the basis `1, w, ..., w^{m-1}`: simply its bits.
    pub fn basis(&self) -> Vec<u32> {
        (0..self.m).map(|i| 1u32 << i).collect()
    }

    pub fn describe(&self) -> String {
        format!("F_2^{} mod {}", self.m, format_f2poly(self.modulus, 'x'))
    }

    /// `a` as a polynomial in the field letter.
    pub fn format(&self, a: u32) -> String {
        format_f2poly(a as u64, self.letter)
    }

    pub fn format_with(&self, a: u32, letter: char) -> String {
        format_f2poly(a as u64, letter)
    }
}

impl fmt::Debug for GfField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

impl PartialEq for GfField {
    fn eq(&self, o: &Self) -> bool {
        self.m == o.m && self.modulus == o.modulus
    }
}

impl Eq for GfField {}

/// Display a bit-polynomial over F_2, highest degree first.
pub fn format_f2poly(p: u64, var: char) -> String {
    if p == 0 {
        return "0".into();
    }
    let mut terms = Vec::new();
    for i in (0..64).rev() {
        if (p >> i) & 1 == 1 {
            terms.push(match i {
                0 => "1".to_string(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            });
        }
    }
    terms.join("+")
}

/// Field element carrying its field, for the checked public API.
#[derive(Clone)]
pub struct GfElem {
    bits: u32,
    field: Arc<GfField>,
}

impl GfElem {
    pub fn new(field: &Arc<GfField>, bits: u32) -> Result<Self> {
        Ok(GfElem {
            bits: field.check(bits)?,
            field: field.clone(),
        })
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn field(&self) -> &Arc<GfField> {
        &self.field
    }

    fn same(&self, o: &GfElem) -> Result<()> {
        if *self.field == *o.field {
            Ok(())
        } else {
            Err(Error::MixedFields(self.field.describe(), o.field.describe()))
        }
    }

    fn wrap(&self, bits: u32) -> GfElem {
        GfElem {
            bits,
            field: self.field.clone(),
        }
    }

    pub fn add(&self, o: &GfElem) -> Result<GfElem> {
        self.same(o)?;
        Ok(self.wrap(self.bits ^ o.bits))
    }

    pub fn mul(&self, o: &GfElem) -> Result<GfElem> {
        self.same(o)?;
        Ok(self.wrap(self.field.mul(self.bits, o.bits)))
    }

    pub fn inv(&self) -> Result<GfElem> {
        Ok(self.wrap(self.field.inv(self.bits)?))
    }

    pub fn pow(&self, e: i64) -> Result<GfElem> {
        Ok(self.wrap(self.field.pow(self.bits, e)?))
    }

    pub fn frobenius(&self) -> GfElem {
        self.wrap(self.field.frobenius(self.bits))
    }

    pub fn conjugacy_orbit(&self) -> Vec<GfElem> {
        self.field
            .orbit(self.bits)
            .into_iter()
            .map(|b| self.wrap(b))
            .collect()
    }

    pub fn degree(&self) -> u32 {
        self.field.elem_degree(self.bits)
    }
}

impl PartialEq for GfElem {
    fn eq(&self, o: &Self) -> bool {
        self.bits == o.bits && *self.field == *o.field
    }
}

impl Eq for GfElem {}

impl fmt::Display for GfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format(self.bits))
    }
}

impl fmt::Debug for GfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({:#x})", self.field.format(self.bits), self.bits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_moduli() {
        assert_eq!(GfField::get(4).unwrap().modulus(), 0b10011);
        assert_eq!(GfField::get(5).unwrap().modulus(), 0b101001);
        assert_eq!(GfField::get(6).unwrap().modulus(), 0b1100001);
        assert_eq!(GfField::get(2).unwrap().modulus(), 0b111);
        assert!(GfField::get(17).is_err());
        assert!(GfField::with_modulus(4, 0b10101).is_err());
    }

    #[test]
    fn gf2_is_trivial() {
        let f = GfField::get(1).unwrap();
        assert_eq!(f.mul(1, 1), 1);
        assert_eq!(f.inv(1).unwrap(), 1);
        assert_eq!(f.trace(1), 1);
        assert_eq!(f.solve_as(0), Some(0));
        assert_eq!(f.solve_as(1), None);
    }

    #[test]
    fn sqrt_and_as() {
        let f = GfField::get(6).unwrap();
        for a in 0..64 {
            assert_eq!(f.square(f.sqrt(a)), a);
            match f.solve_as(a) {
                Some(z) => {
                    assert_eq!(f.square(z) ^ z, a);
                    assert_eq!(f.trace(a), 0);
                }
                None => assert_eq!(f.trace(a), 1),
            }
        }
    }

    #[test]
    fn formatting() {
        let f = GfField::get(4).unwrap();
        assert_eq!(f.format(0b1011), "a^3+a+1");
        assert_eq!(f.format(0), "0");
    }
}
