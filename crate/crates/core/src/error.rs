use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("series did not converge within {terms} terms (tail bound {tail_bound})")]
    NotConverged { terms: usize, tail_bound: String },

    #[error("invalid precision: {0}")]
    InvalidPrecision(String),

    #[error("insufficient precision: need at least {required} working digits, have {available}")]
    InsufficientPrecision { required: u32, available: u32 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
}

pub type Result<T> = std::result::Result<T, Error>;
