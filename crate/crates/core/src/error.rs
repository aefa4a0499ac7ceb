use thiserror::Error;

/// Errors raised by the arithmetic and code-construction routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("precision must be at least 1")]
    ZeroPrecision,
    #[error("{value} is not a unit modulo {p}")]
    NonUnit { value: String, p: u64 },
    #[error("r0 = {r0} is not a root modulo {p}")]
    NotARoot { r0: u64, p: u64 },
    #[error("r0 = {r0} is a multiple root modulo {p}")]
    NotSimpleRoot { r0: u64, p: u64 },
    #[error("{0} has no 2-adic square root congruent to 1 mod 4")]
    NoSquareRoot(String),
    #[error("operands live in different rings: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("divisor is not monic")]
    NotMonic,
    #[error("constant term is not a unit")]
    NonUnitConstantTerm,
    #[error("n = {n} and p = {p} are not coprime")]
    NotCoprime { n: usize, p: u64 },
    #[error(
        "dual of a code with all codewords divisible by p is not supported at infinite precision"
    )]
    InfiniteModeUnsupported,
    #[error("enumeration of {attempted} items exceeds the budget of {budget}")]
    BudgetExceeded { attempted: String, budget: u64 },
    #[error("length {0} is not a prime congruent to 7 mod 8")]
    BadLength(usize),
    #[error("modulus p^prec too large for the fixed-width kernel ({0} bits)")]
    PrecisionTooLarge(u64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Stable machine-readable identifier for the error kind.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "NotPrime",
            Error::ZeroPrecision => "ZeroPrecision",
            Error::NonUnit { .. } => "NonUnit",
            Error::NotARoot { .. } => "NotARoot",
            Error::NotSimpleRoot { .. } => "NotSimpleRoot",
            Error::NoSquareRoot(_) => "NoSquareRoot",
            Error::RingMismatch(..) => "RingMismatch",
            Error::NotMonic => "NotMonic",
            Error::NonUnitConstantTerm => "NonUnitConstantTerm",
            Error::NotCoprime { .. } => "NotCoprime",
            Error::InfiniteModeUnsupported => "InfiniteModeUnsupported",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::BadLength(_) => "BadLength",
            Error::PrecisionTooLarge(_) => "PrecisionTooLarge",
            Error::Parse(_) => "Parse",
            Error::InvalidArgument(_) => "InvalidArgument",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
