use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable index {index} out of range for {n} variables")]
    VariableOutOfRange { index: usize, n: usize },

    #[error("ambient mismatch: {left} vs {right} variables")]
    AmbientMismatch { left: usize, right: usize },

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: u32, right: u32 },

    #[error("empty ideal")]
    EmptyIdeal,

    #[error("the unit ideal is not allowed here")]
    UnitIdeal,

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("zero polynomial is not allowed here")]
    ZeroPolynomial,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("prime {0} is too large (must be below 2^32)")]
    PrimeTooLarge(u64),

    #[error("denominator vanishes in characteristic {0}")]
    DenominatorVanishes(u64),

    #[error("generating set is not minimal: {divisor} divides {multiple}")]
    NotMinimal { divisor: String, multiple: String },

    #[error("ideal is not monomial")]
    NotMonomial,

    #[error("ideal is not polymatroidal: {0}")]
    NotPolymatroidal(String),

    #[error("ideal is not matroidal: {0}")]
    NotMatroidal(String),

    #[error("squarefree product is empty")]
    EmptySquarefreeProduct,

    #[error("set family has no transversal")]
    NoTransversal,

    #[error("empty subset")]
    EmptySubset,

    #[error("subset index {index} out of range for a family of {len}")]
    SubsetOutOfRange { index: usize, len: usize },

    #[error("guard exceeded: {what} ({size} > {limit})")]
    GuardExceeded {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
