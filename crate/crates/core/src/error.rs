use thiserror::Error;

/// Errors produced by synthesis, simulation and parsing.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular over GF(2)")]
    SingularMatrix,
    #[error("gate `{0}` is not a CNOT")]
    NonLinearGate(String),
    #[error("circuit contains composite gate `{0}`; lower it first")]
    NotLowered(String),
    #[error("parse error at line {line}: {msg} (token `{token}`)")]
    Parse { line: usize, token: String, msg: String },
    #[error("invalid gate: {0}")]
    InvalidGate(String),
    #[error("graph has no edges")]
    EmptyGraph,
    #[error("graph is not a tree: {0}")]
    NotATree(String),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("invalid Hamming-weight spec: {0}")]
    InvalidHwp(String),
    #[error("odd k = {0} requires the odd-k option")]
    OddK(usize),
    #[error("ancilla budget exceeded: need {needed}, budget {budget}")]
    BudgetExceeded { needed: usize, budget: usize },
    #[error("matrix is not unipotent")]
    NotUnipotent,
    #[error("amplitude vector has zero norm")]
    ZeroVector,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
