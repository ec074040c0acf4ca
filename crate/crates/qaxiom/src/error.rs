use thiserror::Error;

/// Crate-wide error type. Variants mirror the failure modes of the
/// individual subsystems so callers (and the CLI) can map them to exit
/// codes uniformly.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown generator {0}")]
    UnknownGenerator(String),

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("substitution is not linear: image of {generator} has degree {degree}")]
    NonLinearSubstitution { generator: String, degree: usize },

    #[error("commutator right-hand side is not central{}: {detail}", line_suffix(.line))]
    NotCentral { line: Option<usize>, detail: String },

    #[error("pair {pair} declared more than once (line {line})")]
    DuplicatePair { pair: String, line: usize },

    #[error("missing dimension assignment for: {}", .0.join(", "))]
    MissingDimension(Vec<String>),

    #[error("parse error at line {line}: {message}")]
    ParseError { line: usize, message: String },

    #[error("syntax error at position {position}: {message} (expected {})", .expected.join(" or "))]
    SyntaxError {
        position: usize,
        message: String,
        expected: Vec<String>,
    },

    #[error("negative power of an operator expression is not defined")]
    NegativeOperatorPower,

    #[error("coefficient {0} is not invertible")]
    NonInvertibleCoefficient(String),

    #[error("invalid truncation: {0}")]
    InvalidTruncation(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("missing numeric parameter `{0}`")]
    MissingParam(String),

    #[error("operator is not Hermitian (deviation {deviation:.3e} > {tolerance:.3e})")]
    NonHermitian { deviation: f64, tolerance: f64 },

    #[error("observable is not Hermitian (deviation {deviation:.3e})")]
    NonHermitianObservable { deviation: f64 },

    #[error("truncation too small: {0}")]
    TruncationTooSmall(String),

    #[error("state is not normalized: |norm - 1| = {0:.3e}")]
    UnnormalizedState(f64),

    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    #[error("open path: loop operations require a closed path")]
    OpenPath,

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("flux quantum must be positive, got {0}")]
    NonPositiveQuantum(f64),

    #[error("usage error: {0}")]
    UsageError(String),
}

fn line_suffix(line: &Option<usize>) -> String {
    match line {
        Some(l) => format!(" (line {l})"),
        None => String::new(),
    }
}

pub type Result<T> = std::result::Result<T, Error>;
