use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero polynomial not allowed in {0}")]
    ZeroPolynomial(&'static str),
    #[error("constant polynomial not allowed in {0}")]
    ConstantPolynomial(&'static str),
    #[error("polynomials are not coprime over the rationals")]
    NotCoprime,
    #[error("unsupported base field size q = {0} (only q = 2)")]
    UnsupportedField(u64),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("L-polynomial violates the functional equation at coefficient {0}")]
    AsymmetricL(usize),
    #[error("invalid Weil polynomial: {0}")]
    InvalidWeil(String),

    #[error("field element {bits:#x} does not belong to F_2^{m}")]
    NotInField { bits: u32, m: u32 },
    #[error("operands live in different fields ({0} vs {1})")]
    MixedFields(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("series is not a unit (zero constant term)")]
    NotAUnit,
    #[error("modulus {0:#x} is not irreducible of degree {1}")]
    Reducible(u64, u32),

    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid curve model: {0}")]
    Model(String),
    #[error("point is not on the curve: {0}")]
    OffCurve(String),
    #[error("place not found: {0}")]
    UnknownPlace(String),
    #[error("divisor does not balance: total degree {0}")]
    Unbalanced(i64),
    #[error("counts are inconsistent with the declared genus: {0}")]
    GenusMismatch(String),

    #[error("uniformizer has valuation {0} at the place (expected 1)")]
    BadUniformizer(i64),
    #[error("function has a pole of order {0} at the place")]
    Pole(i64),
    #[error("function vanishes to the working precision")]
    Vanishes,
    #[error("not a unit at {0}")]
    NotUnitAt(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
}
