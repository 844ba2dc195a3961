//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty measure")]
    EmptyMeasure,

    #[error("degenerate curvature")]
    DegenerateCurvature,

    #[error("undersampled: grid spacing {h} exceeds the alias-free bound {h_max}")]
    Undersampled { h: f64, h_max: f64 },

    #[error("insufficient scales for fit")]
    InsufficientScales,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("counter overflow in energy accumulation")]
    CountOverflow,

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Shorthand for `Error::InvalidParameter` with a formatted message.
macro_rules! invalid {
    ($($arg:tt)*) => {
        return Err($crate::error::Error::InvalidParameter(format!($($arg)*)))
    };
}
pub(crate) use invalid;
