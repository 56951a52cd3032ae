use thiserror::Error;

use crate::exactalg::Coord;

pub type Result<T, E = HilbError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum HilbError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("index out of range: {0}")]
    Index(String),

    #[error("substitution has no image for variable {0}")]
    Substitution(Coord),

    #[error("matrix is singular (rank {rank} of {size})")]
    Singular { rank: usize, size: usize },

    #[error("identity violated at {location}: difference {difference}")]
    IdentityViolation { location: String, difference: String },

    #[error("linear elimination failed for {generator}: {reason}")]
    Elimination { generator: String, reason: String },

    #[error("diagonal variable {variable} survives in {generator}")]
    DiagonalSurvived { generator: String, variable: Coord },

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("decomposition failed: {0}")]
    Decomposition(String),

    #[error("dimension ledger mismatch in {check}: {left} != {right}")]
    Ledger { check: String, left: String, right: String },

    #[error("could not sample a spanning configuration after {tries} attempts")]
    Sampling { tries: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("curve does not extend at anchor {anchor}: pole in {coordinate}")]
    Extension { anchor: usize, coordinate: Coord },

    #[error("enumeration produced {found} entries, expected {expected}: {what}")]
    Enumeration { what: String, found: usize, expected: usize },

    #[error("factorization extraction failed at row {row}, column {col}: {reason}")]
    Extraction { row: usize, col: usize, reason: String },

    #[error("rank deficiency: {0}")]
    RankDeficient(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
