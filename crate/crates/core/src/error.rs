use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph6 parse error at byte {offset}: {message}")]
    Graph6 { offset: usize, message: String },

    #[error("edge list parse error on line {line}: {message}")]
    EdgeList { line: usize, message: String },

    #[error("sidecar parse error on line {line}: {message}")]
    Sidecar { line: usize, message: String },

    #[error("unsupported encoding: {0}")]
    UnsupportedEncoding(String),

    #[error("structural error: {0}")]
    Structure(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// A pseudo-matching failed validation. The message names the first
    /// offending vertex or component.
    #[error("pseudo-matching violation: {0}")]
    Ppm(String),

    #[error("cycle set violation: {0}")]
    CycleSet(String),

    #[error("precondition unmet: {0}")]
    Precondition(String),

    /// A bounded search ran out of budget before reaching a verdict.
    #[error("undecided: {0}")]
    Undecided(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
