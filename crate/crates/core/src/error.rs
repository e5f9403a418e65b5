use thiserror::Error;

/// Errors raised by the algebra routines.
///
/// Variants fall into three classes (see [`Error::class`]): bad input,
/// resource caps / insufficient data, and internal invariant violations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("extension degree must be at least 1")]
    DegreeZero,
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("twist mismatch: q = {left} vs q = {right}")]
    TwistMismatch { left: u64, right: u64 },
    #[error("not a subfield: {0}")]
    NotASubfield(String),
    #[error("zero input")]
    ZeroInput,
    #[error("degree {degree} exceeds the configured cap {cap}")]
    OverflowGuard { degree: u128, cap: u128 },
    #[error("t-image has tau-degree {actual}, expected rank {expected}")]
    RankMismatch { expected: usize, actual: usize },
    #[error("top coefficient of the t-image is zero")]
    TopCoefficientZero,
    #[error("characteristic divides {0}")]
    BadCharacteristic(String),
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("no free basis found after {0} random candidates")]
    BasisSearchExhausted(usize),
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
    #[error("twisting by zero")]
    ZeroTwist,
    #[error("empty tuple")]
    EmptyTuple,
    #[error("tuple is linearly dependent over F_q")]
    DependentBasis,
    #[error("point is not t-torsion")]
    NotTorsion,
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("no theta in F_{size} with theta * n(theta) != 0")]
    NoGoodTheta { size: u128 },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Coarse classification used by the CLI to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Input,
    Inconclusive,
    Internal,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::CapExceeded(_) | Error::BasisSearchExhausted(_) => ErrorClass::Inconclusive,
            Error::InternalInvariantViolation(_) => ErrorClass::Internal,
            _ => ErrorClass::Input,
        }
    }

    /// Short machine-readable code, e.g. `NonPrime`.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NonPrime(_) => "NonPrime",
            Error::NotPrimePower(_) => "NotPrimePower",
            Error::DegreeZero => "DegreeZero",
            Error::DivisionByZero => "DivisionByZero",
            Error::FieldMismatch(_) => "FieldMismatch",
            Error::TwistMismatch { .. } => "TwistMismatch",
            Error::NotASubfield(_) => "NotASubfield",
            Error::ZeroInput => "ZeroInput",
            Error::OverflowGuard { .. } => "OverflowGuard",
            Error::RankMismatch { .. } => "RankMismatch",
            Error::TopCoefficientZero => "TopCoefficientZero",
            Error::BadCharacteristic(_) => "BadCharacteristic",
            Error::CapExceeded(_) => "CapExceeded",
            Error::BasisSearchExhausted(_) => "BasisSearchExhausted",
            Error::InternalInvariantViolation(_) => "InternalInvariantViolation",
            Error::ZeroTwist => "ZeroTwist",
            Error::EmptyTuple => "EmptyTuple",
            Error::DependentBasis => "DependentBasis",
            Error::NotTorsion => "NotTorsion",
            Error::NotInvertible => "NotInvertible",
            Error::NoGoodTheta { .. } => "NoGoodTheta",
            Error::Precondition(_) => "Precondition",
            Error::Parse(_) => "Parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
