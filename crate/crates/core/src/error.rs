use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// The continued-fraction prefix is too short to decide the request.
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    #[error("invalid continued fraction: {0}")]
    InvalidAlpha(String),

    #[error("dimension must be positive")]
    NonPositiveDimension,

    #[error("dimension {n} exceeds the configured maximum {max}")]
    DimensionTooLarge { n: u64, max: u64 },

    #[error("no closed form available for D = {0}")]
    UnsupportedD(u64),

    #[error("spectrum is empty")]
    EmptySpectrum,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
