//! Local expansions at points of a two-chart model.
//!
//! At a smooth point the canonical parameter is `X - x0` when `a(x0) != 0`
//! and `Y - y0` otherwise; the other coordinate is Newton-lifted from the
//! curve equation. Expansions in any other uniformizer go through series
//! reversion and composition.

use std::fmt;
use std::sync::Arc;

use crate::curves::{ArtinSchreierModel, BiPoly, Chart, ChartPoint, F2Poly, RatFunc};
use crate::error::{Error, Result};
use crate::gf::{GfField, TruncSeries};

/// Largest working precision tried before declaring a function zero.
const MAX_WORK: usize = 1 << 12;
const GUARD: usize = 2;

/// `t^val * unit`, `unit(0) != 0`.
#[derive(Clone, PartialEq, Eq)]
pub struct LocalSeries {
    pub val: i64,
    pub unit: TruncSeries,
}

fn truncate(s: &TruncSeries, prec: usize) -> TruncSeries {
    TruncSeries::new(s.field(), s.coeffs().to_vec(), prec).expect("coefficients are in the field")
}

impl LocalSeries {
    /// Strip the valuation off a plain series; its unit keeps the remaining precision.
    pub fn from_series(s: &TruncSeries) -> Result<LocalSeries> {
        let v = s.valuation().ok_or(Error::Vanishes)?;
        let unit = TruncSeries::new(s.field(), s.coeffs()[v..].to_vec(), s.precision() - v)?;
        Ok(LocalSeries { val: v as i64, unit })
    }

    pub fn field(&self) -> &Arc<GfField> {
        self.unit.field()
    }

    /// Number of known unit coefficients.
    pub fn unit_precision(&self) -> usize {
        self.unit.precision()
    }

    /// First exponent not known.
    pub fn absolute_precision(&self) -> i64 {
        self.val + self.unit.precision() as i64
    }

    pub fn truncate_unit(&self, prec: usize) -> LocalSeries {
        LocalSeries {
            val: self.val,
            unit: truncate(&self.unit, prec),
        }
    }

    pub fn mul(&self, o: &LocalSeries) -> LocalSeries {
        let p = self.unit_precision().min(o.unit_precision());
        LocalSeries {
            val: self.val + o.val,
            unit: truncate(&self.unit, p).mul_unchecked(&truncate(&o.unit, p)),
        }
    }

    pub fn inv(&self) -> LocalSeries {
        LocalSeries {
            val: -self.val,
            unit: self.unit.inv().expect("units are invertible"),
        }
    }

    pub fn div(&self, o: &LocalSeries) -> LocalSeries {
        self.mul(&o.inv())
    }

    pub fn pow(&self, e: i64) -> LocalSeries {
        LocalSeries {
            val: self.val * e,
            unit: self.unit.pow(e).expect("units are invertible"),
        }
    }

    /// Plain series `sum_{i < prec} c_i t^i`; fails on a pole or when
    /// fewer than `prec` terms are known.
    pub fn to_series(&self, prec: usize) -> Result<TruncSeries> {
        if self.val < 0 {
            return Err(Error::Pole(-self.val));
        }
        if self.absolute_precision() < prec as i64 {
            return Err(Error::Precondition(format!(
                "expansion known to O(t^{}), asked for O(t^{prec})",
                self.absolute_precision()
            )));
        }
        let mut c = vec![0u32; prec];
        for (i, slot) in c.iter_mut().enumerate().skip(self.val as usize) {
            *slot = self.unit.coeff(i - self.val as usize);
        }
        TruncSeries::new(self.field(), c, prec)
    }

    /// Laurent coefficients `(exponent, coefficient)` for the nonzero terms.
    pub fn terms(&self) -> Vec<(i64, u32)> {
        self.unit
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (self.val + i as i64, c))
            .collect()
    }
}

impl fmt::Display for LocalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fld = self.field();
        let mut parts = Vec::new();
        for (e, c) in self.terms() {
            let mono = match e {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{e}"),
            };
            let coeff = fld.format(c);
            parts.push(match (coeff.as_str(), mono.is_empty()) {
                ("1", true) => "1".to_string(),
                ("1", false) => mono,
                (_, true) => coeff,
                (_, false) if coeff.contains('+') => format!("({coeff})*{mono}"),
                (_, false) => format!("{coeff}*{mono}"),
            });
        }
        parts.push(format!("O(t^{})", self.absolute_precision()));
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for LocalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LocalSeries({self})")
    }
}

fn constant(fld: &Arc<GfField>, c: u32, prec: usize) -> TruncSeries {
    TruncSeries::new(fld, vec![c], prec).expect("constant lies in the field")
}

/// `p(s)` for `p` over F_2.
pub fn poly_at(p: F2Poly, s: &TruncSeries) -> TruncSeries {
    let fld = s.field();
    let mut acc = constant(fld, 0, s.precision());
    if let Some(d) = p.degree() {
        for i in (0..=d).rev() {
            acc = acc.mul_unchecked(s);
            if p.coeff(i) {
                acc = acc.add(&constant(fld, 1, s.precision())).expect("same shape");
            }
        }
    }
    acc
}

/// `g(s)` for a series `g` and `s` with zero constant term.
pub fn compose(g: &TruncSeries, s: &TruncSeries) -> TruncSeries {
    let n = g.precision().min(s.precision());
    let s = truncate(s, n);
    let fld = g.field();
    let mut acc = constant(fld, 0, n);
    for i in (0..n).rev() {
        acc = acc
            .mul_unchecked(&s)
            .add(&constant(fld, g.coeff(i), n))
            .expect("same shape");
    }
    acc
}

/// Coordinate series `(X(s), Y(s))` of the chart at `p` in the canonical
/// parameter `s`, to precision `prec`.
pub fn coordinate_series(
    model: &ArtinSchreierModel,
    p: &ChartPoint,
    prec: usize,
) -> Result<(TruncSeries, TruncSeries)> {
    if !model.on_curve(p) {
        return Err(Error::OffCurve(p.to_string()));
    }
    let fld = p.field();
    let (a, f) = model.chart_polys(p.chart);
    let lin = |c: u32| TruncSeries::new(&fld, vec![c, 1], prec).expect("valid");
    let add = |u: &TruncSeries, v: &TruncSeries| u.add(v).expect("same shape");
    if a.eval(&fld, p.x) != 0 {
        let x = lin(p.x);
        let ax = poly_at(a, &x);
        let fx = poly_at(f, &x);
        let ax_inv = ax.inv()?;
        let mut y = constant(&fld, p.y, prec);
        for _ in 0..=prec {
            let g = add(&add(&y.square(), &ax.mul_unchecked(&y)), &fx);
            if g.valuation().is_none() {
                return Ok((x, y));
            }
            y = add(&y, &g.mul_unchecked(&ax_inv));
        }
        Err(Error::Model(format!("Newton lifting did not converge at {p}")))
    } else {
        let y = lin(p.y);
        let (da, df) = (a.derivative(), f.derivative());
        let mut x = constant(&fld, p.x, prec);
        for _ in 0..=prec {
            let h = add(
                &add(&y.square(), &poly_at(a, &x).mul_unchecked(&y)),
                &poly_at(f, &x),
            );
            if h.valuation().is_none() {
                return Ok((x, y));
            }
            let dh = add(&poly_at(da, &x).mul_unchecked(&y), &poly_at(df, &x));
            let dh_inv = dh
                .inv()
                .map_err(|_| Error::Model(format!("singular point {p}")))?;
            x = add(&x, &h.mul_unchecked(&dh_inv));
        }
        Err(Error::Model(format!("Newton lifting did not converge at {p}")))
    }
}

/// `A + B y` at `p` in the canonical parameter, working precision `w`.
fn bipoly_at_work(
    model: &ArtinSchreierModel,
    g: &BiPoly,
    p: &ChartPoint,
    w: usize,
) -> Result<LocalSeries> {
    let (x, y) = coordinate_series(model, p, w)?;
    match p.chart {
        Chart::Affine => {
            let s = poly_at(g.a, &x)
                .add(&poly_at(g.b, &x).mul_unchecked(&y))
                .expect("same shape");
            LocalSeries::from_series(&s)
        }
        Chart::Infinity => {
            // A(1/X) + B(1/X) Y / X^k = X^{-n} (A*(X) + B*(X) Y)
            let k = model.k;
            let n = g
                .a
                .degree()
                .unwrap_or(0)
                .max(g.b.degree().map_or(0, |d| d + k));
            let astar = g.a.reciprocal(n)?;
            let bstar = if g.b.is_zero() {
                F2Poly::ZERO
            } else {
                g.b.reciprocal(n - k)?
            };
            let s = poly_at(astar, &x)
                .add(&poly_at(bstar, &x).mul_unchecked(&y))
                .expect("same shape");
            let xs = LocalSeries::from_series(&x)?;
            Ok(LocalSeries::from_series(&s)?.mul(&xs.pow(-(n as i64))))
        }
    }
}

/// `A + B y` at `p` in the canonical parameter with at least `unit_prec`
/// known unit coefficients.
pub fn expand_bipoly(
    model: &ArtinSchreierModel,
    g: &BiPoly,
    p: &ChartPoint,
    unit_prec: usize,
) -> Result<LocalSeries> {
    if g.is_zero() {
        return Err(Error::Vanishes);
    }
    let mut w = unit_prec + 2 * GUARD;
    loop {
        match bipoly_at_work(model, g, p, w) {
            Ok(ls) if ls.unit_precision() >= unit_prec => return Ok(ls.truncate_unit(unit_prec)),
            Ok(ls) => w = w.max(ls.val.max(0) as usize + unit_prec + 2 * GUARD) + GUARD,
            Err(Error::Vanishes) => w *= 2,
            Err(e) => return Err(e),
        }
        if w > MAX_WORK {
            return Err(Error::Vanishes);
        }
    }
}

/// A rational function at `p` in the canonical parameter.
pub fn expand_canonical(
    model: &ArtinSchreierModel,
    f: &RatFunc,
    p: &ChartPoint,
    unit_prec: usize,
) -> Result<LocalSeries> {
    let num = expand_bipoly(model, &f.num, p, unit_prec)?;
    let den = expand_bipoly(model, &BiPoly::from_x(f.den), p, unit_prec)?;
    Ok(num.div(&den))
}

/// Order of `f` at `p`.
pub fn valuation_at(model: &ArtinSchreierModel, f: &RatFunc, p: &ChartPoint) -> Result<i64> {
    Ok(expand_canonical(model, f, p, 1)?.val)
}

/// `s` as a series in `t`, given `t = s * u(s)` as a series in `s`.
pub fn revert(t: &LocalSeries) -> Result<LocalSeries> {
    if t.val != 1 {
        return Err(Error::BadUniformizer(t.val));
    }
    let n = t.unit_precision();
    let fld = t.field().clone();
    let u = &t.unit;
    // s = t w(t) with w = 1 / u(t w)
    let mut w = constant(&fld, fld.inv(u.coeff(0))?, n);
    for _ in 0..n {
        let tw = shift(&w, 1);
        let next = compose(u, &tw).inv()?;
        if next == w {
            break;
        }
        w = next;
    }
    Ok(LocalSeries { val: 1, unit: w })
}

/// `t * s` truncated at the same precision.
fn shift(s: &TruncSeries, by: usize) -> TruncSeries {
    let mut c = vec![0u32; by];
    c.extend_from_slice(s.coeffs());
    TruncSeries::new(s.field(), c, s.precision()).expect("valid")
}

/// Rewrite `phi` (a series in `s`) in the parameter `t`, where `s = s_of_t`.
pub fn substitute(phi: &LocalSeries, s_of_t: &LocalSeries) -> LocalSeries {
    let n = phi.unit_precision().min(s_of_t.unit_precision());
    let w = truncate(&s_of_t.unit, n);
    let g = compose(&truncate(&phi.unit, n), &shift(&w, 1));
    LocalSeries {
        val: phi.val,
        unit: w.pow(phi.val).expect("unit").mul_unchecked(&g),
    }
}

/// Default uniformizer at a place with representative `p`: the minimal
/// polynomial of `x0` when `a(x0) != 0`, else `y + g(x)` with `g(x0) = y0`;
/// at infinity `1/x` when `a'(0) != 0`, else `y/x^k + y0`.
pub fn default_uniformizer(model: &ArtinSchreierModel, p: &ChartPoint) -> Result<RatFunc> {
    let fld = p.field();
    let (a, _) = model.chart_polys(p.chart);
    let ramified = a.eval(&fld, p.x) == 0;
    match (p.chart, ramified) {
        (Chart::Affine, false) => Ok(RatFunc::from_x(F2Poly(fld.minpoly(p.x) as u128))),
        (Chart::Affine, true) => {
            let g = interpolate(&fld, p.x, p.y)?;
            Ok(RatFunc::poly(BiPoly::new(g, F2Poly::ONE)))
        }
        (Chart::Infinity, false) => RatFunc::new(BiPoly::ONE, F2Poly::X),
        (Chart::Infinity, true) => {
            let xk = F2Poly::monomial(model.k)?;
            let g = interpolate(&fld, p.x, p.y)?;
            // y/x^k + g(1/x) with g constant here, since x' = 0
            RatFunc::new(BiPoly::new(g.try_mul(xk)?, F2Poly::ONE), xk)
        }
    }
}

/// Lowest-degree `g` over F_2 with `g(x0) = y0`.
fn interpolate(fld: &GfField, x0: u32, y0: u32) -> Result<F2Poly> {
    let d = fld.elem_degree(x0);
    (0u128..1 << d)
        .map(F2Poly)
        .find(|g| g.eval(fld, x0) == y0)
        .ok_or_else(|| Error::Model("coordinate y0 is not a polynomial in x0".into()))
}

/// Expansion of `f` at `p` in `uniformizer` (default if `None`), known up
/// to `O(t^prec)`. Poles are allowed; [`LocalSeries::to_series`] refuses them.
pub fn local_expand(
    model: &ArtinSchreierModel,
    f: &RatFunc,
    p: &ChartPoint,
    uniformizer: Option<&RatFunc>,
    prec: usize,
) -> Result<LocalSeries> {
    let default;
    let t = match uniformizer {
        Some(t) => t,
        None => {
            default = default_uniformizer(model, p)?;
            &default
        }
    };
    let v = valuation_at(model, f, p)?;
    let need = (prec as i64 - v).max(1) as usize + GUARD;
    let phi = expand_canonical(model, f, p, need)?;
    let ts = expand_canonical(model, t, p, need)?;
    if ts.val != 1 {
        return Err(Error::BadUniformizer(ts.val));
    }
    let s = revert(&ts)?;
    Ok(substitute(&phi, &s).truncate_unit(need - GUARD))
}
