//! Explicit models `y^2 + a(x) y = f(x)` over F_2: points, places, divisors
//! and the group law of `y^2 + y = x^3 + x`.

pub mod elliptic;
pub mod f2poly;
pub mod family;
pub mod function;
pub mod model;
pub mod places;

pub use elliptic::{
    e_model, ell_add, ell_mul, ell_translate_action, sigma_action, tau_action, EllipticPoint,
};
pub use f2poly::F2Poly;
pub use family::{full_space, survey_family, FamilyRow};
pub use function::{parse_f2poly, parse_function, parse_plane_poly, BiPoly, RatFunc};
pub use model::{ArtinSchreierModel, Chart, ChartPoint};
pub use places::{
    
    avector, avector_from_fit, divisor_of, fit_l_from_counts, places_above, places_at_infinity,
    places_of_degree, places_over_poly, Divisor, Place,
};

use crate::error::Result;

/// `y^2 + y = x^5 + x^3`.
pub fn c5_model() -> ArtinSchreierModel {
    ArtinSchreierModel::from_equation("y^2 + y = x^5 + x^3", 2, 3).expect("valid model")
}

/// `y^2 + xy = x^5 + x^4 + x^2 + x`.
pub fn genus2_c_model() -> ArtinSchreierModel {
    ArtinSchreierModel::from_equation("y^2 + x*y = x^5 + x^4 + x^2 + x", 2, 3)
        .expect("valid model")
}

/// Parse a place written `P(inf)`, `P(inf,1)` or `P(x0,y0)` with coordinates
/// in the letter of `F_{2^d}` (`a` for d = 4, `b` for 5, `c` for 6, ...).
/// The coordinates may be any point of the orbit.
pub fn parse_place(model: &ArtinSchreierModel, s: &str) -> Result<Place> {
    use crate::error::Error;
    use crate::gf::GfField;
    use crate::parse::parse_gf;

    let s = s.trim();
    let inner = s
        .strip_prefix("P(")
        .or_else(|| s.strip_prefix('('))
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("expected P(x,y) or P(inf), got {s:?}")))?;
    let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
    if parts[0] == "inf" || parts[0] == "∞" {
        let at_inf = places_at_infinity(model)?;
        let want = match parts.get(1) {
            Some(y) => Some(parse_gf(&*GfField::get(1)?, y)?),
            None => None,
        };
        return at_inf
            .iter()
            .find(|p| p.degree == 1 && want.is_none_or(|y| p.rep.y == y))
            .or_else(|| (want.is_none() && at_inf.len() == 1).then(|| &at_inf[0]))
            .cloned()
            .ok_or_else(|| Error::UnknownPlace(s.to_string()));
    }
    if parts.len() != 2 {
        return Err(Error::Parse(format!("expected two coordinates in {s:?}")));
    }
    // smallest field in which both coordinates parse
    for m in 1..=16 {
        let fld = GfField::get(m)?;
        if m == 1 && inner.chars().any(char::is_alphabetic) {
            continue;
        }
        let (Ok(x), Ok(y)) = (parse_gf(&fld, parts[0]), parse_gf(&fld, parts[1])) else {
            continue;
        };
        let p = ChartPoint::affine(m, x, y);
        if !model.on_curve(&p) {
            return Err(Error::OffCurve(s.to_string()));
        }
        return Ok(Place::of_point(&p));
    }
    Err(Error::UnknownPlace(s.to_string()))
}
