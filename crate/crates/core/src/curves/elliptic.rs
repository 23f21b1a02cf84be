//! The group law on `E: y^2 + y = x^3 + x` with identity at infinity, and the
//! automorphisms `sigma = translation by (0,0)` and `tau(x, y) = (x+1, y+x+1)`
//! acting on places.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::f2poly::F2Poly;
use super::model::{ArtinSchreierModel, Chart, ChartPoint};
use super::places::Place;
use crate::error::{Error, Result};
use crate::gf::GfField;

/// The model `y^2 + y = x^3 + x` with `k = 2`.
pub fn e_model() -> ArtinSchreierModel {
    ArtinSchreierModel::new(F2Poly::ONE, F2Poly(0b1010), 1, 2).expect("E is smooth")
}

/// A point of `E` over `F_{2^m}`; `None` is the point at infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EllipticPoint {
    pub m: u32,
    pub xy: Option<(u32, u32)>,
}

impl EllipticPoint {
    pub fn infinity(m: u32) -> EllipticPoint {
        EllipticPoint { m, xy: None }
    }

    pub fn new(m: u32, x: u32, y: u32) -> Result<EllipticPoint> {
        let f = GfField::get(m)?;
        f.check(x)?;
        f.check(y)?;
        let lhs = f.square(y) ^ y;
        let rhs = f.mul(f.square(x), x) ^ x;
        if lhs != rhs {
            return Err(Error::OffCurve(format!(
                "({}, {}) on y^2+y=x^3+x",
                f.format(x),
                f.format(y)
            )));
        }
        Ok(EllipticPoint { m, xy: Some((x, y)) })
    }

    pub fn from_chart_point(p: &ChartPoint) -> Result<EllipticPoint> {
        match p.chart {
            Chart::Affine => EllipticPoint::new(p.m, p.x, p.y),
            Chart::Infinity if p.x == 0 && p.y == 0 => Ok(EllipticPoint::infinity(p.m)),
            Chart::Infinity => Err(Error::OffCurve(p.to_string())),
        }
    }

    pub fn to_chart_point(&self) -> ChartPoint {
        match self.xy {
            Some((x, y)) => ChartPoint::affine(self.m, x, y),
            None => ChartPoint {
                chart: Chart::Infinity,
                m: self.m,
                x: 0,
                y: 0,
            },
        }
    }

    pub fn neg(&self) -> EllipticPoint {
        EllipticPoint {
            m: self.m,
            xy: self.xy.map(|(x, y)| (x, y ^ 1)),
        }
    }

    pub fn lift(&self, m: u32) -> Result<EllipticPoint> {
        EllipticPoint::from_chart_point(&self.to_chart_point().lift(m)?)
    }
}

impl fmt::Display for EllipticPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.xy {
            None => f.write_str("O"),
            Some(_) => write!(f, "{}", self.to_chart_point()),
        }
    }
}

/// Chord and tangent addition.
pub fn ell_add(p: &EllipticPoint, q: &EllipticPoint) -> Result<EllipticPoint> {
    if p.m != q.m {
        return Err(Error::MixedFields(
            format!("F_2^{}", p.m),
            format!("F_2^{}", q.m),
        ));
    }
    let f = GfField::get(p.m)?;
    let ((x1, y1), (x2, y2)) = match (p.xy, q.xy) {
        (None, _) => return Ok(*q),
        (_, None) => return Ok(*p),
        (Some(a), Some(b)) => (a, b),
    };
    let lambda = if x1 != x2 {
        f.div(y1 ^ y2, x1 ^ x2)?
    } else if y1 ^ y2 == 1 {
        return Ok(EllipticPoint::infinity(p.m));
    } else {
        // tangent: (3x^2 + 1) / (2y + 1)
        f.square(x1) ^ 1
    };
    let x3 = f.square(lambda) ^ x1 ^ x2;
    let y3 = f.mul(lambda, x1 ^ x3) ^ y1 ^ 1;
    Ok(EllipticPoint {
        m: p.m,
        xy: Some((x3, y3)),
    })
}

pub fn ell_mul(p: &EllipticPoint, n: i64) -> Result<EllipticPoint> {
    let base = if n < 0 { p.neg() } else { *p };
    let mut acc = EllipticPoint::infinity(p.m);
    for _ in 0..n.unsigned_abs() {
        acc = ell_add(&acc, &base)?;
    }
    Ok(acc)
}

/// Translation by a rational point, acting on places of `E`.
pub fn ell_translate_action(place: &Place, by: &EllipticPoint) -> Result<Place> {
    let p = EllipticPoint::from_chart_point(&place.rep)?;
    let t = by.lift(p.m)?;
    Ok(Place::of_point(&ell_add(&p, &t)?.to_chart_point()))
}

/// `sigma`: translation by `(0, 0)`.
pub fn sigma_action(place: &Place) -> Result<Place> {
    ell_translate_action(place, &EllipticPoint::new(1, 0, 0)?)
}

/// `tau(x, y) = (x + 1, y + x + 1)`, fixing the point at infinity.
pub fn tau_action(place: &Place) -> Result<Place> {
    let p = EllipticPoint::from_chart_point(&place.rep)?;
    let img = match p.xy {
        None => p,
        Some((x, y)) => EllipticPoint::new(p.m, x ^ 1, y ^ x ^ 1)?,
    };
    Ok(Place::of_point(&img.to_chart_point()))
}
