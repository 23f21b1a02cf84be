//! Integer polynomial and integer matrix algebra.

pub mod arith;
pub mod matrix;
pub mod poly;
pub mod resultant;
pub mod sturm;

pub use arith::{divisors, moebius};
pub use matrix::{IntMatrix, SmithForm};
pub use poly::{bigint_serde, IntPoly};
pub use resultant::{discriminant, poly_gcd, radical, reduced_resultant, resultant, sylvester_matrix};
pub use sturm::{
    all_roots_in_interval, count_distinct_roots_in, count_roots_in_weil_interval, eval_quad,
    sturm_chain, QuadValue,
};
