use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("symbol {symbol} at position {position} is outside the alphabet [0, {max}]")]
    SymbolOutOfRange {
        symbol: u32,
        position: usize,
        max: u32,
    },

    /// The error pattern would push a symbol outside `[0, q-1]`.
    #[error("error pattern leaves the alphabet at position {position}")]
    OutOfAlphabet { position: usize },

    #[error("decoding failed: {0}")]
    DecodeFailure(String),

    #[error("{what} needs {requested}, above the configured cap of {cap}")]
    ResourceCap {
        what: &'static str,
        requested: u128,
        cap: u128,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}
