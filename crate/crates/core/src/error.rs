use thiserror::Error;

/// Errors raised by the symmetric-presentation toolkit.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("point {point} is outside 1..={degree}")]
    InvalidPoint { point: usize, degree: usize },

    #[error("not a permutation: {0}")]
    NotAPermutation(String),

    #[error("subset cardinality {k} out of range for degree {n}")]
    CardinalityOutOfRange { k: usize, n: usize },

    #[error("subset {subset} has cardinality {got}, family needs {want}")]
    WrongCardinality {
        subset: String,
        got: usize,
        want: usize,
    },

    #[error("group is not a subgroup of the ambient group")]
    NotSubgroup,

    #[error("matrix is not an involution")]
    NotInvolution,

    #[error("operation requires family {want}, got {got}")]
    WrongFamily { want: char, got: char },

    #[error("{family}_{n} is out of scope: {reason}")]
    OutOfScope {
        family: char,
        n: usize,
        reason: String,
    },

    #[error("enumeration cap of {cap} cosets exceeded")]
    CapExceeded { cap: usize },

    #[error("entry {0} has an even denominator and no image mod 2")]
    EvenDenominator(String),

    #[error("integer overflow in the enumeration kernel")]
    Overflow,

    #[error("matrix dimension {got} unsupported (expected {want})")]
    BadDimension { got: usize, want: String },

    #[error("vector is not fixed by every generator")]
    NotFixed,

    #[error("orthogonal complement is not invariant under the generators")]
    NotInvariant,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
