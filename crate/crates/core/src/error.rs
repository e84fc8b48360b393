use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("field of order {q} exceeds the size bound {bound}")]
    FieldTooLarge { q: u64, bound: u64 },

    #[error("invalid modulus: {0}")]
    InvalidModulus(String),

    #[error("zero has no multiplicative inverse")]
    ZeroInverse,

    #[error("subfield degree {m} does not divide extension degree {n}")]
    NotADivisor { m: u32, n: u32 },

    #[error("q = {0} is not a perfect square")]
    NotSquare(u32),

    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    #[error("the zero vector is not a projective point")]
    ZeroVector,

    #[error("points must be distinct")]
    SamePoint,

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: u32, right: u32 },

    #[error("invalid expression: {0}")]
    InvalidExpr(String),

    #[error("expansion exceeded the term guard of {guard}")]
    TermGuard { guard: u64 },

    #[error("F and G are proportional and do not span a pencil")]
    ProportionalForms,

    #[error("the pencil has {0} F_q-point(s) in its base locus")]
    BaseLocusNotEmpty(usize),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid cover: {0}")]
    InvalidCover(String),

    #[error("point function is identically zero")]
    ZeroFunction,

    #[error("check not applicable: {0}")]
    Inapplicable(String),

    #[error("construction self-check failed: {0}")]
    ConstructionCheck(String),
}

impl Error {
    /// True for errors raised by a size or work limit rather than bad input.
    pub fn is_resource_guard(&self) -> bool {
        matches!(self, Error::FieldTooLarge { .. } | Error::TermGuard { .. })
    }
}
