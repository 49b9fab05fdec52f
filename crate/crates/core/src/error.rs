use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    /// Input outside the mathematical domain of an operation (composite N,
    /// non-binary key, wrong residue class, ...).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid autocorrelation: {0}")]
    InvalidAutocorrelation(String),

    #[error("invalid public key: {0}")]
    InvalidPublicKey(String),

    #[error("integer overflow in exact arithmetic")]
    Overflow,

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("lattice error: {0}")]
    Lattice(String),

    #[error("signing failed: {0}")]
    Signing(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}
