use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("diagrams live in different rectangles: {0}")]
    RectangleMismatch(String),

    #[error("rotation precondition violated: {0}")]
    RotationPrecondition(String),

    #[error("cyclotomic orders differ: {0} vs {1}")]
    OrderMismatch(u32, u32),

    #[error("division by zero")]
    DivisionByZero,

    #[error("expected {expected} evaluation points, found {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("evaluation exponents are not pairwise distinct mod {0}")]
    RepeatedPoints(u32),

    #[error("total weight {total} is not divisible by rl = {modulus}")]
    Divisibility { total: usize, modulus: usize },

    #[error("{what} is not a nonnegative integer: {value}")]
    NonIntegral { what: String, value: String },

    #[error("weight total {found} does not match the Quot-scheme dimension {expected}")]
    DimensionMismatch { expected: i64, found: i64 },

    #[error("quotient degree d + rn = {degree} is not divisible by r + l = {modulus}")]
    QuotDegree { degree: i64, modulus: i64 },

    #[error("instance is not admissible: |weights| + l*d + r*dd = {value} is not divisible by rl = {modulus}")]
    Inadmissible { value: i64, modulus: i64 },

    #[error("root power {power} is not coprime to {order}")]
    NotCoprime { power: i64, order: i64 },

    #[error("parabolic types are incompatible: {0}")]
    TypeMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
