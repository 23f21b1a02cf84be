//! Curves `y^2 + a(x) y = f(x)` over F_2 glued from two affine charts.
//!
//! The chart at infinity uses `x = 1/x'`, `y = y'/x'^k`, giving
//! `y'^2 + a'(x') y' = f'(x')` with `a' = x'^k a(1/x')` and `f' = x'^{2k} f(1/x')`.
//! Only its points with `x' = 0` are new.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::f2poly::F2Poly;
use super::function::parse_plane_poly;
use crate::error::{Error, Result};
use crate::gf::GfField;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Chart {
    Affine,
    Infinity,
}

/// A point of one chart with coordinates in `F_{2^m}` (default modulus).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ChartPoint {
    pub chart: Chart,
    pub m: u32,
    pub x: u32,
    pub y: u32,
}

impl ChartPoint {
    pub fn affine(m: u32, x: u32, y: u32) -> ChartPoint {
        ChartPoint {
            chart: Chart::Affine,
            m,
            x,
            y,
        }
    }

    pub fn field(&self) -> Arc<GfField> {
        GfField::get(self.m).expect("point fields are valid")
    }

    pub fn frobenius(&self) -> ChartPoint {
        let f = self.field();
        ChartPoint {
            x: f.square(self.x),
            y: f.square(self.y),
            ..*self
        }
    }

    /// Degree of the field generated by the coordinates.
    pub fn degree(&self) -> u32 {
        let f = self.field();
        let (a, b) = (f.elem_degree(self.x), f.elem_degree(self.y));
        a * b / num_integer::gcd(a, b)
    }

    /// The same point with coordinates moved into `F_{2^m}`, `m` a multiple
    /// of the current degree.
    pub fn lift(&self, m: u32) -> Result<ChartPoint> {
        if m == self.m {
            return Ok(*self);
        }
        let sub_m = self.degree();
        if !m.is_multiple_of(sub_m) {
            return Err(Error::MixedFields(
                format!("F_2^{sub_m}"),
                format!("F_2^{m}"),
            ));
        }
        let (x, y) = (self.descend(self.x, sub_m)?, self.descend(self.y, sub_m)?);
        let target = GfField::get(m)?;
        let table = target.embedding_from(&*GfField::get(sub_m)?)?;
        Ok(ChartPoint {
            m,
            x: table[x as usize],
            y: table[y as usize],
            ..*self
        })
    }

    fn descend(&self, v: u32, sub_m: u32) -> Result<u32> {
        if sub_m == self.m {
            return Ok(v);
        }
        let sub = GfField::get(sub_m)?;
        let table = self.field().embedding_from(&sub)?;
        table
            .iter()
            .position(|&e| e == v)
            .map(|i| i as u32)
            .ok_or(Error::NotInField { bits: v, m: sub_m })
    }

    /// Rewrite in the smallest field containing the coordinates.
    pub fn minimal(&self) -> ChartPoint {
        let d = self.degree();
        ChartPoint {
            m: d,
            x: self.descend(self.x, d).expect("coordinates lie in their own field"),
            y: self.descend(self.y, d).expect("coordinates lie in their own field"),
            ..*self
        }
    }
}

impl fmt::Display for ChartPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fld = self.field();
        let (x, y) = (fld.format(self.x), fld.format(self.y));
        match self.chart {
            Chart::Affine => write!(f, "({x}, {y})"),
            Chart::Infinity => write!(f, "inf({x}, {y})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArtinSchreierModel {
    pub a: F2Poly,
    pub f: F2Poly,
    pub genus: usize,
    pub k: u32,
    a_inf: F2Poly,
    f_inf: F2Poly,
}

impl ArtinSchreierModel {
    pub fn new(a: F2Poly, f: F2Poly, genus: usize, k: u32) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::Model("a(x) = 0 gives an inseparable equation".into()));
        }
        if a.deg_i() > i64::from(k) || f.deg_i() > 2 * i64::from(k) {
            return Err(Error::Model(format!(
                "deg a = {} and deg f = {} must be at most k = {k} and 2k",
                a.deg_i(),
                f.deg_i()
            )));
        }
        let model = ArtinSchreierModel {
            a,
            f,
            genus,
            k,
            a_inf: a.reciprocal(k)?,
            f_inf: f.reciprocal(2 * k)?,
        };
        for chart in [Chart::Affine, Chart::Infinity] {
            if let Some(p) = model.singular_point(chart)? {
                return Err(Error::Model(format!("singular at {p}")));
            }
        }
        Ok(model)
    }

    /// Parse `y^2 + a*y = f` (either side may carry any terms).
    pub fn from_equation(eq: &str, genus: usize, k: u32) -> Result<Self> {
        let (lhs, rhs) = eq
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected an equation, got {eq:?}")))?;
        let mut c = parse_plane_poly(lhs)?;
        let r = parse_plane_poly(rhs)?;
        c.resize(c.len().max(r.len()), F2Poly::ZERO);
        for (i, p) in r.into_iter().enumerate() {
            c[i] += p;
        }
        while c.last() == Some(&F2Poly::ZERO) {
            c.pop();
        }
        if c.len() != 3 || c[2] != F2Poly::ONE {
            return Err(Error::Model(
                "equation must have the form y^2 + a(x) y = f(x)".into(),
            ));
        }
        Self::new(c[1], c[0], genus, k)
    }

    /// Model file: `curve: <equation>; genus: <g>; k: <k>` (separated by `;`
    /// or newlines, `#` starts a comment). `k` defaults to `g + 1`.
    pub fn parse_model_file(text: &str) -> Result<Self> {
        let mut curve = None;
        let mut genus = None;
        let mut k = None;
        for item in text
            .lines()
            .map(|l| l.split('#').next().unwrap_or(""))
            .flat_map(|l| l.split(';'))
        {
            let item = item.trim();
            if item.is_empty() {
                continue;
            }
            let (key, val) = item
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected key: value, got {item:?}")))?;
            let val = val.trim();
            match key.trim() {
                "curve" => curve = Some(val.to_string()),
                "genus" => genus = Some(parse_num(val, "genus")?),
                "k" => k = Some(parse_num(val, "k")?),
                "name" => {}
                other => return Err(Error::Parse(format!("unknown model key {other:?}"))),
            }
        }
        let curve = curve.ok_or_else(|| Error::Parse("model file lacks 'curve:'".into()))?;
        let genus = genus.ok_or_else(|| Error::Parse("model file lacks 'genus:'".into()))?;
        let k = k.unwrap_or(genus + 1);
        Self::from_equation(&curve, genus as usize, k as u32)
    }

    pub fn chart_polys(&self, chart: Chart) -> (F2Poly, F2Poly) {
        match chart {
            Chart::Affine => (self.a, self.f),
            Chart::Infinity => (self.a_inf, self.f_inf),
        }
    }

    pub fn equation(&self) -> String {
        let a = if self.a == F2Poly::ONE {
            "y".to_string()
        } else if self.a.degree() == Some(1) && self.a.0 == 2 {
            "xy".to_string()
        } else {
            format!("({})y", self.a)
        };
        format!("y^2+{a}={}", self.f)
    }

    pub fn on_curve(&self, p: &ChartPoint) -> bool {
        let fld = p.field();
        let (a, f) = self.chart_polys(p.chart);
        fld.square(p.y) ^ fld.mul(a.eval(&fld, p.x), p.y) ^ f.eval(&fld, p.x) == 0
    }

    /// Points of one chart above `x` in `F_{2^m}`, in increasing `y`.
    pub fn points_above(&self, chart: Chart, fld: &GfField, x: u32) -> Vec<u32> {
        let (a, f) = self.chart_polys(chart);
        let av = a.eval(fld, x);
        let fv = f.eval(fld, x);
        if av == 0 {
            return vec![fld.sqrt(fv)];
        }
        let c = fld.div(fv, fld.square(av)).expect("nonzero");
        match fld.solve_as(c) {
            Some(z) => {
                let y0 = fld.mul(z, av);
                let mut v = vec![y0, y0 ^ av];
                v.sort_unstable();
                v
            }
            None => vec![],
        }
    }

    fn singular_point(&self, chart: Chart) -> Result<Option<ChartPoint>> {
        let (a, f) = self.chart_polys(chart);
        let (da, df) = (a.derivative(), f.derivative());
        let rad = a
            .squarefree_parts()
            .into_iter()
            .fold(F2Poly::ONE, |acc, (p, _)| acc.try_mul(p).expect("divides a"));
        for (d, _) in rad.distinct_degree() {
            let fld = GfField::get(d)
                .map_err(|_| Error::Model(format!("a(x) has a factor of degree {d} > 16")))?;
            for x in 0..fld.size() {
                if chart == Chart::Infinity && x != 0 {
                    continue;
                }
                if a.eval(&fld, x) != 0 {
                    continue;
                }
                let y = fld.sqrt(f.eval(&fld, x));
                if fld.mul(da.eval(&fld, x), y) ^ df.eval(&fld, x) == 0 {
                    return Ok(Some(ChartPoint { chart, m: d, x, y }));
                }
            }
        }
        Ok(None)
    }

    /// All points over `F_{2^n}`: the affine chart plus the chart at infinity
    /// over `x' = 0`. Sorted.
    pub fn points_over(&self, n: u32) -> Result<Vec<ChartPoint>> {
        check_n(n)?;
        let fld = GfField::get(n)?;
        let mut out = Vec::new();
        for x in 0..fld.size() {
            for y in self.points_above(Chart::Affine, &fld, x) {
                out.push(ChartPoint::affine(n, x, y));
            }
        }
        for y in self.points_above(Chart::Infinity, &fld, 0) {
            out.push(ChartPoint {
                chart: Chart::Infinity,
                m: n,
                x: 0,
                y,
            });
        }
        Ok(out)
    }

    /// `N_n = #X(F_{2^n})`.
    pub fn count_points(&self, n: u32) -> Result<i64> {
        check_n(n)?;
        let fld = GfField::get(n)?;
        let affine: usize = (0..fld.size())
            .map(|x| self.points_above(Chart::Affine, &fld, x).len())
            .sum();
        Ok((affine + self.points_above(Chart::Infinity, &fld, 0).len()) as i64)
    }
}

impl fmt::Display for ArtinSchreierModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.equation())
    }
}

fn parse_num(s: &str, what: &str) -> Result<u64> {
    s.parse()
        .map_err(|_| Error::Parse(format!("{what} must be a non-negative integer, got {s:?}")))
}

fn check_n(n: u32) -> Result<()> {
    if !(1..=16).contains(&n) {
        return Err(Error::OutOfRange(format!("extension degree n = {n} (1..=16)")));
    }
    Ok(())
}
