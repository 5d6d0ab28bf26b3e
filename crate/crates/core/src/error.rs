use thiserror::Error;

/// Errors raised by the library.
///
/// Parse errors carry the 1-based line number of the offending input line.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid source: {0}")]
    InvalidSource(String),

    #[error("invalid density: {0}")]
    InvalidDensity(String),

    #[error("invalid channel: {0}")]
    InvalidChannel(String),

    #[error("invalid stochastic map: {0}")]
    InvalidMap(String),

    #[error("invalid degree distribution: {0}")]
    InvalidDegreeDistribution(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("unknown symbol {0}")]
    UnknownSymbol(i64),

    #[error("dimension mismatch: expected {expected}, got {got} ({what})")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("alphabet mismatch between sources")]
    AlphabetMismatch,

    #[error("density is not symmetric")]
    AsymmetricDensity,

    #[error("invalid alphas: {0}")]
    InvalidAlphas(String),

    #[error("linear feasibility solver did not converge after {0} pivots")]
    SolverNonConvergence(usize),

    #[error("grid mismatch between densities")]
    GridMismatch,

    #[error("mass defect {defect:e} exceeds limit at iteration {iteration}")]
    MassDefect { iteration: usize, defect: f64 },

    #[error("threshold precondition violated: {0}")]
    ThresholdPrecondition(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
