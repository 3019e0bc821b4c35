use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("digraph is not regular: {0}")]
    NonRegular(String),
    #[error("graph is not regular: {0}")]
    NotRegular(String),
    #[error("graph has a loop or a multiple edge at ({0}, {1})")]
    HasLoopOrMultiEdge(usize, usize),
    #[error("digraph is not strongly connected")]
    NotStronglyConnected,
    #[error("graph is not connected")]
    Disconnected,
    #[error("multiplicity overflow while forming path counts")]
    Overflow,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("bad prime {0}: {1}")]
    BadPrime(u64, String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("group closure exceeded the cap of {0} elements")]
    ClosureBudgetExceeded(usize),
    #[error("unknown graph name `{0}`")]
    UnknownName(String),
    #[error("dimension {n} exceeds the dense limit {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("iteration did not converge: {0}")]
    NoConvergence(String),
    #[error("no computed eigenvalue within tolerance of trivial value {0}")]
    TrivialMatchFailure(String),
    #[error("block residual {0:e} exceeds tolerance {1:e}")]
    ResidualTooLarge(f64, f64),
    #[error("walk analysis needs an aperiodic digraph, period is {0}")]
    Periodic(usize),
    #[error("degenerate zeta base: k = {0}, need k >= 2")]
    DegenerateBase(usize),
    #[error("verdicts disagree: {0}")]
    VerdictMismatch(String),
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
