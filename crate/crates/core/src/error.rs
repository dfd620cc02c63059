use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("{a} and {b} do not form a D(4)-pair: {a}*{b}+4 is not a square")]
    NotAPair { a: String, b: String },

    #[error("not a D(4)-tuple: {0}")]
    NotATuple(String),

    #[error("precision exhausted at {bits} bits: {what}")]
    PrecisionExhausted { bits: usize, what: String },

    #[error("internal consistency violated: {0}")]
    Consistency(String),

    #[error("class cannot be shifted: {0}")]
    NotShiftable(String),

    #[error("unknown threshold case `{0}`")]
    UnknownCase(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("fixed point did not converge after {0} iterations")]
    NoConvergence(usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
