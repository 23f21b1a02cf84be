//! Ray class quotients `prod_j U_j / (image of the S-units)` for a modulus
//! `sum m_j P_j`, and Artin splitting verdicts.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::group::FiniteAbelianGroup;
use super::local::{default_uniformizer, local_expand, valuation_at};
use super::units::{unit_group_structure, LocalUnitGroup};
use crate::curves::{
    divisor_of, parse_function, parse_place, places_at_infinity, ArtinSchreierModel, BiPoly, Divisor, F2Poly, Place,
    RatFunc,
};
use crate::error::{Error, Result};
use crate::gf::{GfField, TruncSeries};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConductorTerm {
    pub place: Place,
    pub mult: usize,
    pub uniformizer: RatFunc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConductorSpec {
    pub terms: Vec<ConductorTerm>,
    /// Places required to split completely.
    pub split: Vec<Place>,
}

/// Split `a + b*(c + d)` at top-level `+` signs.
fn split_top(s: &str, sep: char) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if ch == sep && depth == 0 {
            out.push(std::mem::take(&mut cur));
        } else {
            cur.push(ch);
        }
    }
    out.push(cur);
    out.into_iter()
        .map(|x| x.trim().to_string())
        .filter(|x| !x.is_empty())
        .collect()
}

/// Comma separated places such as `P(0,0), P(1,0)`.
pub fn parse_place_list(model: &ArtinSchreierModel, s: &str) -> Result<Vec<Place>> {
    split_top(s, ',').iter().map(|p| parse_place(model, p)).collect()
}

impl ConductorSpec {
    pub fn new(
        model: &ArtinSchreierModel,
        terms: Vec<(Place, usize)>,
        split: Vec<Place>,
    ) -> Result<ConductorSpec> {
        let mut out = Vec::new();
        for (place, mult) in terms {
            if mult == 0 {
                return Err(Error::Precondition(format!("multiplicity 0 at {place}")));
            }
            let uniformizer = default_uniformizer(model, &place.rep)?;
            out.push(ConductorTerm {
                place,
                mult,
                uniformizer,
            });
        }
        let spec = ConductorSpec { terms: out, split };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        let support: BTreeSet<&Place> = self.terms.iter().map(|t| &t.place).collect();
        if support.len() != self.terms.len() {
            return Err(Error::Precondition("repeated place in the conductor".into()));
        }
        if let Some(p) = self.split.iter().find(|p| support.contains(p)) {
            return Err(Error::Precondition(format!(
                "{p} is both in the conductor and in the split set"
            )));
        }
        Ok(())
    }

    /// `4*P(inf) + 2*P(0,1)` and a comma separated split set `P(0,0), P(1,0)`.
    pub fn parse(model: &ArtinSchreierModel, conductor: &str, split: &str) -> Result<ConductorSpec> {
        let mut terms = Vec::new();
        for term in split_top(conductor, '+') {
            let (mult, place) = match term.split_once('*') {
                Some((m, p)) if !m.contains('(') => (
                    m.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad multiplicity in {term:?}")))?,
                    p,
                ),
                _ => (1, term.as_str()),
            };
            terms.push((parse_place(model, place)?, mult));
        }
        if terms.is_empty() {
            return Err(Error::Parse("empty conductor".into()));
        }
        ConductorSpec::new(model, terms, parse_place_list(model, split)?)
    }

    /// Override the uniformizer at conductor place `j` after checking it.
    pub fn set_uniformizer(
        &mut self,
        model: &ArtinSchreierModel,
        j: usize,
        t: RatFunc,
    ) -> Result<()> {
        let v = valuation_at(model, &t, &self.terms[j].place.rep)?;
        if v != 1 {
            return Err(Error::BadUniformizer(v));
        }
        self.terms[j].uniformizer = t;
        Ok(())
    }

    pub fn unit_groups(&self) -> Result<Vec<LocalUnitGroup>> {
        self.terms
            .iter()
            .map(|t| unit_group_structure(t.place.degree, t.mult))
            .collect()
    }
}

impl fmt::Display for ConductorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| format!("{}*{}", t.mult, t.place))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// A function's exponent vector over the concatenated generator lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitImage {
    pub name: String,
    pub function: String,
    pub per_place: Vec<Vec<i64>>,
}

impl UnitImage {
    pub fn exponents(&self) -> Vec<i64> {
        self.per_place.concat()
    }
}

/// Local expansion of `u` at conductor place `j`, to its multiplicity.
pub fn unit_at(
    model: &ArtinSchreierModel,
    spec: &ConductorSpec,
    j: usize,
    u: &RatFunc,
) -> Result<TruncSeries> {
    let term = &spec.terms[j];
    let ls = local_expand(model, u, &term.place.rep, Some(&term.uniformizer), term.mult)?;
    if ls.val != 0 {
        return Err(Error::NotUnitAt(format!(
            "{} (order {}) for {u}",
            term.place, ls.val
        )));
    }
    ls.to_series(term.mult)
}

/// Exponent vectors of `u` at every conductor place.
pub fn image_of(
    model: &ArtinSchreierModel,
    spec: &ConductorSpec,
    groups: &[LocalUnitGroup],
    u: &RatFunc,
) -> Result<Vec<Vec<i64>>> {
    (0..spec.terms.len())
        .map(|j| groups[j].discrete_log(&unit_at(model, spec, j, u)?))
        .collect()
}

/// Checks that `div(u)` lives on the split set (plus `extra`) and
/// avoids the conductor.
pub fn check_sunit(
    model: &ArtinSchreierModel,
    spec: &ConductorSpec,
    u: &RatFunc,
    extra: &[Place],
) -> Result<Divisor> {
    let d = divisor_of(model, u)?;
    for p in d.support() {
        if spec.terms.iter().any(|t| t.place == p) {
            return Err(Error::NotUnitAt(format!("{p} (conductor place) for {u}")));
        }
        if !spec.split.contains(&p) && !extra.contains(&p) {
            return Err(Error::Precondition(format!(
                "div({u}) = {d} meets {p}, outside the split set"
            )));
        }
    }
    Ok(d)
}

/// Images of named S-units, each verified to be supported on the split set.
pub fn sunit_images(
    model: &ArtinSchreierModel,
    spec: &ConductorSpec,
    sunits: &[(String, String)],
) -> Result<Vec<UnitImage>> {
    let groups = spec.unit_groups()?;
    sunits
        .iter()
        .map(|(name, text)| {
            let u = parse_function(model, text)?;
            check_sunit(model, spec, &u, &[])?;
            Ok(UnitImage {
                name: name.clone(),
                function: text.clone(),
                per_place: image_of(model, spec, &groups, &u)?,
            })
        })
        .collect()
}

/// Quotient of the product of the local unit groups by the images.
pub fn ray_class_quotient(groups: &[LocalUnitGroup], images: &[Vec<i64>]) -> FiniteAbelianGroup {
    let orders: Vec<u64> = groups.iter().flat_map(|g| g.orders.iter().copied()).collect();
    FiniteAbelianGroup::quotient(&orders, images)
}

/// Everything computed for one modulus.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RayClassResult {
    pub spec: ConductorSpec,
    pub groups: Vec<LocalUnitGroup>,
    pub images: Vec<UnitImage>,
    pub quotient: FiniteAbelianGroup,
}

impl RayClassResult {
    pub fn compute(
        model: &ArtinSchreierModel,
        spec: ConductorSpec,
        sunits: &[(String, String)],
    ) -> Result<RayClassResult> {
        let groups = spec.unit_groups()?;
        let images = sunit_images(model, &spec, sunits)?;
        let rows: Vec<Vec<i64>> = images.iter().map(UnitImage::exponents).collect();
        let quotient = ray_class_quotient(&groups, &rows);
        Ok(RayClassResult {
            spec,
            groups,
            images,
            quotient,
        })
    }

    pub fn ambient_order(&self) -> u128 {
        self.groups.iter().map(LocalUnitGroup::order).product()
    }

    /// Order of the subgroup generated by `rows` inside the ambient group.
    pub fn subgroup_order(&self, rows: &[Vec<i64>]) -> u128 {
        self.ambient_order() / ray_class_quotient(&self.groups, rows).order()
    }

    /// Uniformizer name used in tables: `t1, t2, ...`, or `t` for one place.
    pub fn t_name(&self, j: usize) -> String {
        if self.spec.terms.len() == 1 {
            "t".into()
        } else {
            format!("t{}", j + 1)
        }
    }

    /// Image row as a product such as `(1+t1)^3(1+t2)`.
    pub fn format_image(&self, per_place: &[Vec<i64>]) -> String {
        let parts: Vec<String> = per_place
            .iter()
            .enumerate()
            .map(|(j, e)| self.groups[j].format_element(e, &self.t_name(j)))
            .filter(|s| s != "1")
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.concat()
        }
    }

    /// Ambient exponent vector of `1 + c(x0) t^i` at conductor place `j`,
    /// where `c` is a polynomial in the residue of `x`.
    pub fn one_unit(&self, j: usize, c: F2Poly, i: usize) -> Result<Vec<i64>> {
        let place = &self.spec.terms[j].place;
        let fld = place.rep.field();
        let coeff = c.eval(&fld, place.rep.x);
        let s = TruncSeries::one_plus(&fld, coeff, i, self.groups[j].m)?;
        let mut out = Vec::new();
        for (k, g) in self.groups.iter().enumerate() {
            if k == j {
                out.extend(g.discrete_log(&s)?);
            } else {
                out.extend(vec![0; g.rank()]);
            }
        }
        Ok(out)
    }

    /// Verdict for `place` with witness `u` (`div(u) = place + D`, `D` on
    /// the split set) in the quotient further divided by `selector`: the
    /// place splits iff the image of `u` vanishes there.
    pub fn artin_split_verdict(
        &self,
        model: &ArtinSchreierModel,
        selector: &[Vec<i64>],
        place: &Place,
        u: &RatFunc,
    ) -> Result<SplitVerdict> {
        if self.spec.terms.iter().any(|t| t.place == *place) {
            return Err(Error::Precondition(format!("{place} divides the conductor")));
        }
        let d = divisor_of(model, u)?;
        if d.mult(place) != 1 {
            return Err(Error::Precondition(format!(
                "witness {u} has order {} at {place}",
                d.mult(place)
            )));
        }
        let rest = d.add(&Divisor::from_terms([(place.clone(), -1)]));
        if let Some(p) = rest.support().into_iter().find(|p| !self.spec.split.contains(p)) {
            return Err(Error::Precondition(format!(
                "div({u}) - {place} meets {p}, outside the split set"
            )));
        }
        let per_place = image_of(model, &self.spec, &self.groups, u)?;
        let mut rows: Vec<Vec<i64>> = self.images.iter().map(UnitImage::exponents).collect();
        rows.extend(selector.iter().cloned());
        let q = ray_class_quotient(&self.groups, &rows);
        let projection = q.project(&per_place.concat());
        Ok(SplitVerdict {
            place: place.clone(),
            witness: u.to_string(),
            splits: projection.iter().all(|&c| c == 0),
            per_place,
            projection,
        })
    }

    /// `u / u(P)` at conductor place `j`: the coefficient of `t^i` as a
    /// polynomial in the residue of `x` (for `u^{2^d - 1} ≡ 1 + g t`).
    pub fn normalized_coeff(
        &self,
        model: &ArtinSchreierModel,
        j: usize,
        u: &RatFunc,
        i: usize,
    ) -> Result<F2Poly> {
        let s = unit_at(model, &self.spec, j, u)?;
        let fld = s.field().clone();
        let n = s.scale(fld.inv(s.coeff(0))?);
        residue_poly(&fld, self.spec.terms[j].place.rep.x, n.coeff(i))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitVerdict {
    pub place: Place,
    pub witness: String,
    pub splits: bool,
    pub per_place: Vec<Vec<i64>>,
    pub projection: Vec<i64>,
}

/// `c` written as `g(x0)` with `deg g < [F_2(x0) : F_2]`.
pub fn residue_poly(fld: &GfField, x0: u32, c: u32) -> Result<F2Poly> {
    let d = fld.elem_degree(x0);
    (0u128..1 << d)
        .map(F2Poly)
        .find(|g| g.eval(fld, x0) == c)
        .ok_or_else(|| Error::Precondition("residue is not a polynomial in x".into()))
}

/// Key used to order witnesses: pole order, then `h(x)` before `y + g(x)`,
/// then the coefficient bits.
fn witness_key(model: &ArtinSchreierModel, f: &BiPoly) -> Result<(i64, u8, u128)> {
    let mut pole = 0;
    for p in places_at_infinity(model)? {
        let v = valuation_at(model, &RatFunc::poly(*f), &p.rep)?;
        pole += (-v).max(0) * i64::from(p.degree);
    }
    Ok((pole, u8::from(!f.b.is_zero()), f.a.0))
}

/// Lowest function `h(x)` or `y + g(x)` (degrees ≤ `bound`) whose divisor is
/// `place` plus a divisor supported on `support`.
pub fn witness_search(
    model: &ArtinSchreierModel,
    place: &Place,
    support: &[Place],
    bound: u32,
) -> Result<Option<RatFunc>> {
    let mut cands: Vec<BiPoly> = Vec::new();
    for bits in 1u128..1 << (bound + 1) {
        cands.push(BiPoly::from_x(F2Poly(bits)));
    }
    for bits in 0u128..1 << (bound + 1) {
        cands.push(BiPoly::new(F2Poly(bits), F2Poly::ONE));
    }
    let mut keyed = cands
        .into_iter()
        .map(|f| Ok((witness_key(model, &f)?, f)))
        .collect::<Result<Vec<_>>>()?;
    keyed.sort();
    let fld = place.rep.field();
    for (_, f) in keyed {
        // cheap filter: the norm must vanish at the place's x-coordinate
        if place.rep.chart == crate::curves::Chart::Affine
            && f.norm(model)?.eval(&fld, place.rep.x) != 0
        {
            continue;
        }
        let u = RatFunc::poly(f);
        let d = divisor_of(model, &u)?;
        if d.mult(place) == 1
            && d
                .support()
                .iter()
                .all(|p| p == place || support.contains(p))
        {
            return Ok(Some(u));
        }
    }
    Ok(None)
}
