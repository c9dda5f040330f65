use thiserror::Error;

/// Errors raised by the exact engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("exponent overflow")]
    ExponentOverflow,

    #[error("colength undecided up to exponent {ceiling}")]
    UndecidedColength { ceiling: u32 },

    #[error("infinite length: {0}")]
    InfiniteLength(String),

    #[error("not a subpair: {0}")]
    NotSubpair(String),

    #[error("structural precondition violated: {0}")]
    Structural(String),

    #[error("unsupported regime: {0}")]
    Regime(String),

    #[error("rank deficient: {0}")]
    RankDeficient(String),

    #[error("Ratliff-Rush union did not stabilize within {n_max} steps")]
    UnstableUnion { n_max: usize, partial: Vec<usize> },

    #[error("fit did not stabilize: {0}")]
    UnstableFit(String),

    #[error("analytic spread undecided: {0}")]
    UndecidedSpread(String),

    #[error("genericity failure after {attempts} attempts: {hint}")]
    Genericity { attempts: usize, hint: String },

    #[error("precondition rejected: {0}")]
    Precondition(String),

    #[error("incomplete certificate: {0}")]
    Incomplete(String),
}

pub type Result<T> = std::result::Result<T, Error>;
