use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("characteristic {0} is neither 0 nor a prime")]
    InvalidCharacteristic(u64),
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("operator is not nilpotent")]
    NotNilpotent,
    #[error("operator is not unipotent")]
    NotUnipotent,
    #[error("matrix is singular")]
    Singular,
    #[error("truncation too short: need degree {needed}, have {available}")]
    TruncationTooShort { needed: usize, available: usize },
    #[error("{n}! is not invertible in characteristic {p}")]
    FactorialNotInvertible { n: usize, p: u64 },
    #[error("partition {sub} is not contained in {sup}")]
    NotContained { sub: String, sup: String },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("series shapes differ: {0}")]
    ShapeMismatch(String),
    #[error("substituted series must have zero constant term")]
    NonzeroConstantTerm,
    #[error("series has no invertible linear coefficient")]
    NotInvertibleLinearPart,
    #[error("linear scalar must be nonzero")]
    ZeroLinearScalar,
    #[error("{j} is not invertible in characteristic {p}")]
    JNotInvertible { j: usize, p: u64 },
    #[error("series is not symmetric under permutation of variables")]
    NotSymmetric,
    #[error("symmetric split postcondition failed: {0}")]
    SplitPostcondition(String),
    #[error("not a formal group law: {0}")]
    InvalidLaw(String),
    #[error("prime {0} is not allowed here (need p > 3)")]
    BadPrime(u64),
    #[error("operator does not stabilize the given subalgebra")]
    DoesNotStabilize,
    #[error("the Cayley series needs characteristic different from 2")]
    CharTwo,
    #[error("adjoint partition has an even block")]
    BlocksNotAllOdd,
    #[error("exponent {exponent} is divisible by {modulus}")]
    ExponentDivisible { exponent: usize, modulus: usize },
    #[error("partition {0} is not distinguished for this type")]
    NotDistinguished(String),
    #[error("unknown type: {0}")]
    UnknownType(String),
    #[error("unknown strategy: {0}")]
    UnknownStrategy(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
