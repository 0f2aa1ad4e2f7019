use thiserror::Error;

/// Crate-wide error type. Parameter errors name the violated precondition.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{divisor} does not divide {of}")]
    NotDivisor { divisor: u64, of: u64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("field exponent {0} out of supported range 1..=16")]
    FieldExponent(u32),

    #[error("Fermat index {0} exceeds overflow guard (t <= 5)")]
    FermatOverflow(u32),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("permutation {index} is not an automorphism: edge ({u},{v}) maps to a non-edge")]
    NotAutomorphism { index: usize, u: usize, v: usize },

    #[error("homomorphism invalid: edge ({u},{v}) maps to non-adjacent pair ({iu},{iv})")]
    InvalidHomomorphism { u: usize, v: usize, iu: usize, iv: usize },

    #[error("certificate rejected at {leg}: {reason}")]
    CertificateRejected { leg: &'static str, reason: String },

    #[error("{0}")]
    Unsupported(String),

    #[error("search budget exhausted: {0}")]
    BudgetExhausted(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
