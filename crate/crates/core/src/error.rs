use thiserror::Error;

/// Errors raised by the algebraic and numeric layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid index: {0}")]
    InvalidIndex(String),

    #[error("term budget exceeded: more than {limit} generated terms")]
    Budget { limit: usize },

    #[error("divergent symbol {symbol}")]
    Divergent { symbol: String },

    #[error(
        "tolerance {tol:e} not reached for {symbol} within cutoff {cutoff} \
         (value {value}, tail bound {tail_bound:e})"
    )]
    ToleranceUnreachable {
        symbol: String,
        tol: f64,
        cutoff: u64,
        value: f64,
        tail_bound: f64,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("degree {degree} exceeds the truncation cap {cap}")]
    DegreeOverflow { degree: u32, cap: u32 },

    #[error("mismatched series parameters: {0}")]
    Mismatch(String),

    #[error("no value assigned to variable x_{0}")]
    MissingVariable(u32),

    #[error("q must lie strictly between 0 and 1, got {0}")]
    QOutOfRange(f64),

    #[error("word {0} does not correspond to a q-zeta value")]
    NotEvaluable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
