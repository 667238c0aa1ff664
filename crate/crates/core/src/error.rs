//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("operator construction: {0}")]
    Construction(String),

    #[error("operator is not monic; normalize before testing self-duality")]
    NotMonic,

    #[error("operator is not maximally unipotent at z=0: indicial polynomial is not c*T^n")]
    NotMum,

    #[error("recurrence resonance: indicial value vanishes at n={0}")]
    Resonance(usize),

    #[error("series precondition: {0}")]
    SeriesPrecondition(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("no positive real root found")]
    NoPositiveRoot,

    #[error("no admissible critical point found")]
    NoCriticalPoint,

    #[error("critical value q_c={0} outside (0,1); no real positive tau")]
    BadCriticalValue(String),

    #[error("rational reconstruction failed: no convergent within tolerance below denominator bound")]
    Reconstruction,

    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),

    #[error("{0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
