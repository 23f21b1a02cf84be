//! Finite fields F_{2^m} (m ≤ 16) and truncated power series over them.

pub mod field;
pub mod series;

pub use field::{bit_degree, bit_rem, clmul, format_f2poly, is_irreducible, GfElem, GfField};
pub use series::TruncSeries;
