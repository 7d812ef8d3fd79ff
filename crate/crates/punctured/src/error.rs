//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum KitError {
    #[error("characteristic {0} is not prime (or zero)")]
    BadField(u32),

    #[error("cannot parse scalar `{0}`")]
    BadScalar(String),

    #[error("matrix shape mismatch: {0}")]
    Shape(String),

    #[error("d^2 != 0 at degree {degree}: entry ({row},{col}) = {value}")]
    NotAComplex {
        degree: i64,
        row: usize,
        col: usize,
        value: String,
    },

    #[error("not a chain map: fails at degree {0}")]
    NotAChainMap(i64),

    #[error("unknown object `{0}`")]
    UnknownObject(String),

    #[error("unknown basis id `{0}`")]
    UnknownBasis(String),

    #[error("category file error: {0}")]
    Schema(String),

    #[error("structure constant not homogeneous: {0}")]
    Inhomogeneous(String),

    #[error("weight bookkeeping violated: {0}")]
    WeightViolation(String),

    #[error("window error: {0}")]
    Window(String),

    #[error("validation failed: {0}")]
    Invalid(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
