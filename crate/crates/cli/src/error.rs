use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}, column {col}: {msg}")]
    Spec { line: usize, col: usize, msg: String },

    #[error("line {line}: expected {expected} entries per generator, found {found}")]
    Arity { line: usize, expected: usize, found: usize },

    #[error("{0}")]
    Io(String),

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Engine(#[from] coefmod::error::Error),
}

pub type CliResult<T> = std::result::Result<T, CliError>;
