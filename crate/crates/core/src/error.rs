use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("length/alphabet mismatch: ({n1}, q={q1}) vs ({n2}, q={q2})")]
    Mismatch {
        n1: usize,
        q1: u16,
        n2: usize,
        q2: u16,
    },

    #[error("symbol {symbol} at position {position} is outside Z_{q}")]
    Symbol {
        symbol: u16,
        position: usize,
        q: u16,
    },

    #[error("weight {w} outside the admissible range {lo}..={hi} ({rule})")]
    WeightRange {
        w: usize,
        lo: usize,
        hi: usize,
        rule: &'static str,
    },

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error(
        "work estimate {work} exceeds the exhaustive limit {limit}; use a sampled sweep instead"
    )]
    Budget { work: u128, limit: u128 },

    #[error("code is empty after {0}")]
    EmptyCode(String),

    #[error("code violates its declared parameters: {0}")]
    Invalid(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
