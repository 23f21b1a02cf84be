use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix, row-major, dimensions fixed at construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

/// `u * m * v == d` with `u`, `v` unimodular and `d` diagonal, `d_i | d_{i+1}`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Diagonal entries (zeros included), length `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d.get(i, i).clone())
            .collect()
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Panics if a row has the wrong length.
    pub fn from_rows(rows: usize, cols: usize, data: Vec<Vec<BigInt>>) -> Self {
        assert_eq!(data.len(), rows, "row count");
        let mut flat = Vec::with_capacity(rows * cols);
        for r in data {
            assert_eq!(r.len(), cols, "row length");
            flat.extend(r);
        }
        IntMatrix {
            rows,
            cols,
            data: flat,
        }
    }

    pub fn from_i64_rows(data: &[Vec<i64>]) -> Self {
        let cols = data.first().map_or(0, Vec::len);
        Self::from_rows(
            data.len(),
            cols,
            data.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul(&self, o: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let idx = i * o.cols + j;
                    out.data[idx] += a * o.get(k, j);
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn left_mul_vec(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.rows, "dimension mismatch");
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| &x[i] * self.get(i, j)).sum())
            .collect()
    }

    /// Determinant by fraction-free elimination (square matrices only).
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "det of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(k, k) * a.get(i, j) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        sign * a.get(n - 1, n - 1)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.get(src, j) * k;
            self.data[dst * self.cols + j] += v;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self.get(i, src) * k;
            self.data[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let idx = r * self.cols + j;
            self.data[idx] = -&self.data[idx];
        }
    }

    /// Replace rows (i, j) by the unimodular combination
    /// `[[s, t], [-b/g, a/g]]` that puts `gcd(a, b)` in column `c` of row `i`
    /// and zero in row `j`.
    fn gcd_rows(&mut self, i: usize, j: usize, c: usize) {
        let a = self.get(i, c).clone();
        let b = self.get(j, c).clone();
        let e = a.extended_gcd(&b);
        let (g, s, t) = (e.gcd, e.x, e.y);
        let (ag, bg) = (&a / &g, &b / &g);
        for col in 0..self.cols {
            let x = self.get(i, col).clone();
            let y = self.get(j, col).clone();
            self.set(i, col, &s * &x + &t * &y);
            self.set(j, col, &ag * &y - &bg * &x);
        }
    }

    /// Row-style Hermite normal form: upper echelon, positive pivots,
    /// entries above each pivot reduced into `[0, pivot)`, zero rows last.
    pub fn hnf(&self) -> IntMatrix {
        let mut a = self.clone();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            for i in r + 1..a.rows {
                if !a.get(i, c).is_zero() {
                    a.gcd_rows(r, i, c);
                }
            }
            if a.get(r, c).is_zero() {
                continue;
            }
            if a.get(r, c).is_negative() {
                a.negate_row(r);
            }
            let p = a.get(r, c).clone();
            for i in 0..r {
                let q = a.get(i, c).div_floor(&p);
                a.add_row(i, r, &-q);
            }
            r += 1;
        }
        a
    }

    /// Smith normal form with transforms.
    pub fn snf(&self) -> SmithForm {
        let mut d = self.clone();
        let mut u = IntMatrix::identity(self.rows);
        let mut v = IntMatrix::identity(self.cols);
        let n = self.rows.min(self.cols);
        let mut t = 0;
        while t < n {
            // Pivot: smallest nonzero magnitude in the trailing block.
            let mut best: Option<(usize, usize)> = None;
            for i in t..d.rows {
                for j in t..d.cols {
                    let x = d.get(i, j);
                    if !x.is_zero()
                        && best.is_none_or(|(bi, bj)| x.abs() < d.get(bi, bj).abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);
            loop {
                let mut dirty = false;
                for i in t + 1..d.rows {
                    if !d.get(i, t).is_zero() {
                        let (a, b) = (d.get(t, t).clone(), d.get(i, t).clone());
                        if b.is_multiple_of(&a) {
                            let q = -(&b / &a);
                            d.add_row(i, t, &q);
                            u.add_row(i, t, &q);
                        } else {
                            track_gcd_rows(&mut d, &mut u, t, i, t);
                            dirty = true;
                        }
                    }
                }
                for j in t + 1..d.cols {
                    if !d.get(t, j).is_zero() {
                        let (a, b) = (d.get(t, t).clone(), d.get(t, j).clone());
                        if b.is_multiple_of(&a) {
                            let q = -(&b / &a);
                            d.add_col(j, t, &q);
                            v.add_col(j, t, &q);
                        } else {
                            track_gcd_cols(&mut d, &mut v, t, j, t);
                            dirty = true;
                        }
                    }
                }
                if dirty {
                    continue;
                }
                // Divisibility: fold an offending row into row t and redo.
                let p = d.get(t, t).clone();
                let bad = (t + 1..d.rows)
                    .find(|&i| (t + 1..d.cols).any(|j| !d.get(i, j).is_multiple_of(&p)));
                match bad {
                    Some(i) => {
                        let one = BigInt::one();
                        d.add_row(t, i, &one);
                        u.add_row(t, i, &one);
                    }
                    None => break,
                }
            }
            if d.get(t, t).is_negative() {
                d.negate_row(t);
                u.negate_row(t);
            }
            t += 1;
        }
        SmithForm { d, u, v }
    }
}

fn track_gcd_rows(d: &mut IntMatrix, u: &mut IntMatrix, i: usize, j: usize, c: usize) {
    let a = d.get(i, c).clone();
    let b = d.get(j, c).clone();
    let e = a.extended_gcd(&b);
    let (g, s, t) = (e.gcd, e.x, e.y);
    let (ag, bg) = (&a / &g, &b / &g);
    for m in [d, u] {
        for col in 0..m.cols {
            let x = m.get(i, col).clone();
            let y = m.get(j, col).clone();
            m.set(i, col, &s * &x + &t * &y);
            m.set(j, col, &ag * &y - &bg * &x);
        }
    }
}

fn track_gcd_cols(d: &mut IntMatrix, v: &mut IntMatrix, i: usize, j: usize, r: usize) {
    let a = d.get(r, i).clone();
    let b = d.get(r, j).clone();
    let e = a.extended_gcd(&b);
    let (g, s, t) = (e.gcd, e.x, e.y);
    let (ag, bg) = (&a / &g, &b / &g);
    for m in [d, v] {
        for row in 0..m.rows {
            let x = m.get(row, i).clone();
            let y = m.get(row, j).clone();
            m.set(row, i, &s * &x + &t * &y);
            m.set(row, j, &ag * &y - &bg * &x);
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_i64_rows(rows)
    }

    #[test]
    fn det_small() {
        assert_eq!(m(&[vec![1, 1], vec![1, 3]]).det(), BigInt::from(2));
        assert_eq!(
            m(&[vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 9]]).det(),
            BigInt::from(-3)
        );
    }

    #[test]
    fn hnf_reduces_above_pivots() {
        let h = m(&[vec![2, 3], vec![0, 5]]).hnf();
        assert_eq!(h, m(&[vec![2, 3], vec![0, 5]]));
        let h = m(&[vec![4, 6], vec![6, 9]]).hnf();
        assert_eq!(h, m(&[vec![2, 3], vec![0, 0]]));
    }

    #[test]
    fn snf_rectangular_with_zero_rows() {
        let a = m(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16], vec![0, 0, 0]]);
        let s = a.snf();
        assert_eq!(s.u.mul(&a).mul(&s.v), s.d);
        let diag: Vec<i64> = s.diagonal().iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(diag, vec![2, 6, 12]);
    }
}
