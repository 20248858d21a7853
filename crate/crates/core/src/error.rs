use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not prime: {0}")]
    NotPrime(u32),
    #[error("no shipped modulus for GF({p}^{k}): {reason}")]
    NoShippedModulus { p: u32, k: u32, reason: String },
    #[error("field mismatch: GF({left}) vs GF({right})")]
    FieldMismatch { left: u32, right: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("frobenius power {power} out of range for extension degree {degree}")]
    BadPower { power: u32, degree: u32 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("cannot spin zero vector")]
    ZeroSpin,
    #[error("group too large: {0}")]
    CapExceeded(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("precondition not satisfied: {0}")]
    Precondition(String),
    #[error("red flag: {0}")]
    RedFlag(String),
    #[error("malformed input at {location}: {message}")]
    Format { location: String, message: String },
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub fn dims(msg: impl Into<String>) -> Self {
        Error::DimensionMismatch(msg.into())
    }

    pub fn format(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Format {
            location: location.into(),
            message: message.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
