use num_bigint::BigUint;
use thiserror::Error;

use crate::engine::MoveError;
use crate::report::ValidationReport;
use crate::surface::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed data: wrong dimensions, unknown labels in a data file, overflow.
    #[error("structural error: {0}")]
    Structure(String),

    #[error("validation failed:\n{0}")]
    Invalid(ValidationReport),

    #[error("unknown {kind} `{name}` (available: {available})")]
    Lookup {
        kind: &'static str,
        name: String,
        available: String,
    },

    #[error("category mismatch: {0}")]
    CategoryMismatch(String),

    #[error("numeric consistency failure: {0}")]
    NumericConsistency(String),

    #[error("exact and S-matrix paths disagree: exact {exact}, verlinde {verlinde}")]
    PathDisagreement { exact: BigUint, verlinde: BigUint },

    #[error(transparent)]
    Move(#[from] MoveError),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}
