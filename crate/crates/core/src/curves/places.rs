//! Places as Frobenius orbits of points, place counts and principal divisors.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::f2poly::F2Poly;
use super::function::RatFunc;
use super::model::{ArtinSchreierModel, Chart, ChartPoint};
use crate::error::{Error, Result};
use crate::gf::GfField;
use crate::rayclass::local::valuation_at;
use crate::zeta::{avector_from_nvector, l_from_nvector, nvector_from_l, AVector, LPoly};

/// A closed point: the Frobenius orbit of `rep`, which is its smallest
/// element under `(chart, x, y)` with coordinates in `F_{2^degree}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Place {
    pub degree: u32,
    pub rep: ChartPoint,
}

impl Place {
    /// The place through `p`, whatever field `p` is written in.
    pub fn of_point(p: &ChartPoint) -> Place {
        let p = p.minimal();
        let orbit = orbit_of(&p);
        Place {
            degree: p.m,
            rep: *orbit.iter().min().expect("orbit is nonempty"),
        }
    }

    pub fn orbit(&self) -> Vec<ChartPoint> {
        orbit_of(&self.rep)
    }

    pub fn contains(&self, p: &ChartPoint) -> bool {
        p.degree() == self.degree && Place::of_point(p) == *self
    }

    pub fn is_at_infinity(&self) -> bool {
        self.rep.chart == Chart::Infinity
    }
}

fn orbit_of(p: &ChartPoint) -> Vec<ChartPoint> {
    let mut out = vec![*p];
    let mut q = p.frobenius();
    while q != *p {
        out.push(q);
        q = q.frobenius();
    }
    out
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fld = self.rep.field();
        let (x, y) = (fld.format(self.rep.x), fld.format(self.rep.y));
        match self.rep.chart {
            Chart::Affine => write!(f, "P({x},{y})"),
            Chart::Infinity if self.rep.y == 0 => f.write_str("P(inf)"),
            Chart::Infinity => write!(f, "P(inf,{y})"),
        }
    }
}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}[{}]", self.degree)
    }
}

/// Places of exact degree `d`, sorted.
pub fn places_of_degree(model: &ArtinSchreierModel, d: u32) -> Result<Vec<Place>> {
    if !(1..=12).contains(&d) {
        return Err(Error::OutOfRange(format!("place degree {d} (1..=12)")));
    }
    let mut seen = BTreeSet::new();
    for p in model.points_over(d)? {
        if p.degree() == d {
            seen.insert(Place::of_point(&p));
        }
    }
    Ok(seen.into_iter().collect())
}

/// `a_1, ..., a_dmax` by counting orbits.
pub fn avector(model: &ArtinSchreierModel, dmax: u32) -> Result<AVector> {
    let a = (1..=dmax)
        .map(|d| places_of_degree(model, d).map(|v| v.len() as i64))
        .collect::<Result<Vec<_>>>()?;
    Ok(AVector::from_counts(a))
}

/// L-polynomial from `N_1..N_g`, checked against recounts of
/// `N_{g+1}..N_{2g}`.
pub fn fit_l_from_counts(model: &ArtinSchreierModel) -> Result<LPoly> {
    let g = model.genus;
    let n = (1..=g as u32)
        .map(|k| model.count_points(k))
        .collect::<Result<Vec<_>>>()?;
    let l = l_from_nvector(&n, g, 2)?;
    let check = (2 * g).max(1);
    let predicted = nvector_from_l(&l, check)?;
    for k in g + 1..=check {
        let got = model.count_points(k as u32)?;
        if got != predicted[k - 1] {
            return Err(Error::GenusMismatch(format!(
                "N_{k} = {got}, the fitted L-polynomial predicts {}",
                predicted[k - 1]
            )));
        }
    }
    Ok(l)
}

/// Place counts predicted by the fitted L-polynomial.
pub fn avector_from_fit(model: &ArtinSchreierModel, dmax: usize) -> Result<AVector> {
    let l = fit_l_from_counts(model)?;
    Ok(avector_from_nvector(&nvector_from_l(&l, dmax)?))
}

/// Places of `model` lying over the root `x0` of `F_{2^i}` (of exact degree
/// `i`) in the given chart.
pub fn places_above(model: &ArtinSchreierModel, chart: Chart, i: u32, x0: u32) -> Result<Vec<Place>> {
    let fld = GfField::get(i)?;
    let ys = model.points_above(chart, &fld, x0);
    if !ys.is_empty() {
        let mut v: Vec<Place> = ys
            .into_iter()
            .map(|y| Place::of_point(&ChartPoint { chart, m: i, x: x0, y }))
            .collect();
        v.sort();
        v.dedup();
        return Ok(v);
    }
    // inert: one place of degree 2i
    let big = GfField::get(2 * i)?;
    let x = big.embedding_from(&fld)?[x0 as usize];
    let y = model.points_above(chart, &big, x)[0];
    Ok(vec![Place::of_point(&ChartPoint {
        chart,
        m: 2 * i,
        x,
        y,
    })])
}

/// Places over the zeros of `p` in the affine chart.
pub fn places_over_poly(model: &ArtinSchreierModel, p: F2Poly) -> Result<Vec<Place>> {
    let mut out = BTreeSet::new();
    let rad = p
        .squarefree_parts()
        .into_iter()
        .fold(F2Poly::ONE, |acc, (q, _)| acc.try_mul(q).expect("divides p"));
    for (i, part) in rad.distinct_degree() {
        let fld = GfField::get(i)
            .map_err(|_| Error::OutOfRange(format!("irreducible factor of degree {i} > 16")))?;
        for x in 0..fld.size() {
            if fld.elem_degree(x) == i && part.eval(&fld, x) == 0 {
                out.extend(places_above(model, Chart::Affine, i, x)?);
            }
        }
    }
    Ok(out.into_iter().collect())
}

pub fn places_at_infinity(model: &ArtinSchreierModel) -> Result<Vec<Place>> {
    places_above(model, Chart::Infinity, 1, 0)
}

/// Formal sum of places.
#[derive(Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Divisor {
    pub terms: BTreeMap<Place, i64>,
}

impl Divisor {
    pub fn new() -> Divisor {
        Divisor::default()
    }

    pub fn from_terms<I: IntoIterator<Item = (Place, i64)>>(it: I) -> Divisor {
        let mut d = Divisor::new();
        for (p, m) in it {
            d.add_term(p, m);
        }
        d
    }

    pub fn add_term(&mut self, p: Place, m: i64) {
        let e = self.terms.entry(p.clone()).or_insert(0);
        *e += m;
        if *e == 0 {
            self.terms.remove(&p);
        }
    }

    pub fn add(&self, o: &Divisor) -> Divisor {
        let mut d = self.clone();
        for (p, &m) in &o.terms {
            d.add_term(p.clone(), m);
        }
        d
    }

    pub fn neg(&self) -> Divisor {
        Divisor::from_terms(self.terms.iter().map(|(p, &m)| (p.clone(), -m)))
    }

    pub fn degree(&self) -> i64 {
        self.terms.iter().map(|(p, &m)| m * i64::from(p.degree)).sum()
    }

    pub fn mult(&self, p: &Place) -> i64 {
        self.terms.get(p).copied().unwrap_or(0)
    }

    pub fn support(&self) -> Vec<Place> {
        self.terms.keys().cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (p, &m)) in self.terms.iter().enumerate() {
            let sign = match (i, m < 0) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            match m.abs() {
                1 => write!(f, "{sign}{p}")?,
                a => write!(f, "{sign}{a}*{p}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Divisor({self})")
    }
}

/// Principal divisor of `f`. Zeros and poles lie over the zeros of the
/// norms of numerator and denominator, or at infinity; each candidate place
/// gets its order from a local expansion.
pub fn divisor_of(model: &ArtinSchreierModel, f: &RatFunc) -> Result<Divisor> {
    if f.is_zero() {
        return Err(Error::Vanishes);
    }
    let (nn, nd) = f.norm(model)?;
    let mut candidates: BTreeSet<Place> = places_over_poly(model, nn.try_mul(nd)?)?
        .into_iter()
        .collect();
    candidates.extend(places_at_infinity(model)?);
    let mut d = Divisor::new();
    for p in candidates {
        let v = valuation_at(model, f, &p.rep)?;
        if v != 0 {
            d.add_term(p, v);
        }
    }
    if d.degree() != 0 {
        return Err(Error::Unbalanced(d.degree()));
    }
    Ok(d)
}
