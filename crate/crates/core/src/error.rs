use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field parameters: {0}")]
    InvalidField(String),
    #[error("modulus is not irreducible")]
    NotIrreducible,
    #[error("primitive reporting requested but x is not primitive")]
    NotPrimitive,
    #[error("division by zero")]
    DivisionByZero,
    #[error("coordinate {value} out of range for GF({q})")]
    CoordinateOutOfRange { value: u64, q: usize },
    #[error("parameter divisibility violated: {0}")]
    Divisibility(String),
    #[error("basis not independent: {0}")]
    BasisNotIndependent(&'static str),
    #[error("element does not lie in GF(q^{0})")]
    OutsideSubfield(usize),
    #[error("shape error: expected {expected}, got {got}")]
    Shape { expected: String, got: String },
    #[error("not a q-polynomial: exponent {0} is not a power of q")]
    NotQPolynomial(u128),
    #[error("Moore matrix singular")]
    MooreSingular,
    #[error("root space is everything")]
    ZeroPolynomial,
    #[error("evaluation points dependent")]
    PointsDependent,
    #[error("invalid code parameters: {0}")]
    InvalidParams(String),
    #[error("bad message length: expected {expected}, got {got}")]
    BadMessageLength { expected: usize, got: usize },
    #[error("index {index} out of range 1..={max}")]
    OutOfRange { index: usize, max: usize },
    #[error("oracle scale exceeded: {size} codewords over budget {budget}")]
    OracleScale { size: u128, budget: u128 },
    #[error("degenerate code: fewer than two codewords")]
    Degenerate,
    #[error("not a codeword restriction")]
    NotCodeword,
    #[error("erasure pattern exceeds guarantee")]
    ExceedsGuarantee,
    #[error("invalid channel configuration: {0}")]
    InvalidChannel(String),
    #[error("cannot realize rank constraint")]
    RankConstraint,
    #[error("spec mismatch: file fingerprint {found}, expected {expected}")]
    SpecMismatch { expected: String, found: String },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn shape_err(expected: impl ToString, got: impl ToString) -> Error {
    Error::Shape {
        expected: expected.to_string(),
        got: got.to_string(),
    }
}
