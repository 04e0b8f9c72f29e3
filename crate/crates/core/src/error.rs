use thiserror::Error;

/// Errors raised by the optimizers, the benchmark suite and the harness.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("point outside the search space at index {index}: {value}")]
    OutOfBounds { index: usize, value: f64 },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    /// The evaluation budget (or the current epoch slice of it) is used up.
    #[error("evaluation budget exhausted after {consumed} evaluations")]
    BudgetExhausted { consumed: u64 },

    #[error("unknown algorithm id `{0}`")]
    UnknownAlgorithm(String),

    #[error("unknown function `{0}`")]
    UnknownFunction(String),

    #[error("missing result cells: {}", .0.join(", "))]
    MissingCells(Vec<String>),

    #[error("malformed table: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    TomlDe(#[from] toml::de::Error),

    #[error(transparent)]
    TomlSer(#[from] toml::ser::Error),
}

impl Error {
    pub fn is_budget_exhausted(&self) -> bool {
        matches!(self, Error::BudgetExhausted { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
