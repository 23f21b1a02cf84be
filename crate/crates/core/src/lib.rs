//! Exact computations behind the classification of optimal curves over F_2.
//!
//! The crate is split along the data it manipulates:
//!
//! * [`algebra`]: integer polynomials (resultants, radicals, Sturm counts) and
//!   integer matrices (Hermite and Smith normal forms).
//! * [`gf`]: the fields F_{2^m} for m ≤ 16 and truncated power series over them.
//! * [`zeta`]: conversions between real Weil polynomials, L-polynomials, point
//!   counts and place counts.
//! * [`weilenum`]: enumeration of candidate real Weil polynomials and the
//!   factorization filters applied to them.
//! * [`curves`]: explicit models `y^2 + a(x) y = f(x)`, their points, places,
//!   divisors and the group law of the genus one curve `y^2 + y = x^3 + x`.
//! * [`rayclass`]: local expansions, truncated local unit groups and ray class
//!   group quotients.

pub mod algebra;
pub mod curves;
pub mod error;
pub mod gf;
pub mod parse;
pub mod rayclass;
pub mod weilenum;
pub mod zeta;

pub use error::{Error, Result};
