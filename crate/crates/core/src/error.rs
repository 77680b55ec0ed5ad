use thiserror::Error;

/// Errors raised by the construction and certification pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("size bound exceeded: {what} needs {needed}, bound is {bound}")]
    BoundExceeded {
        what: &'static str,
        needed: String,
        bound: u64,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("operands belong to different fields")]
    FieldMismatch,

    #[error("element index {0} is outside the field")]
    ElementOutOfRange(u64),

    #[error("partial trace length {k} out of range 0..={n}")]
    TraceOutOfRange { k: u32, n: u32 },

    #[error("{d} does not divide {n}")]
    NotADivisor { d: u32, n: u32 },

    #[error("invalid profile: {0}")]
    InvalidProfile(String),

    #[error("lexicographic maximum is not unique among {0:?}")]
    LexicographicTie(Vec<usize>),

    #[error("value is not in the subfield F_q")]
    NotInSubfield,

    #[error("zero function has no valuation")]
    ZeroInput,

    #[error("valuation ambiguous after {iterations} iterations: {detail}")]
    AmbiguousValuation { iterations: u32, detail: String },

    #[error("no admissible w1 branch for (q, n, r) = ({q}, {n}, {r})")]
    NoAdmissibleBranch { q: u64, n: u32, r: u32 },

    #[error("generators {0:?} have gcd {1} != 1")]
    NotNumericalSemigroup(Vec<u64>, u64),

    #[error("sequence {0:?} is not telescopic")]
    NotTelescopic(Vec<u64>),

    #[error("integer overflow computing {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
