use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("tree order {requested} exceeds the configured maximum {max}")]
    OrderTooLarge { requested: usize, max: usize },

    #[error("color {color} outside the range 1..={colors}")]
    ColorOutOfRange { color: u32, colors: u32 },

    #[error("the single-vertex tree has no Butcher-product decomposition")]
    NoDecomposition,

    #[error("cannot parse tree notation {input:?}: {reason}")]
    TreeSyntax { input: String, reason: String },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("invalid tableau: {0}")]
    InvalidTableau(String),

    #[error("irrational value where a rational was required: {0}")]
    Irrational(String),

    #[error("inconsistent method: {0}")]
    Inconsistent(String),

    #[error("symbolic expansion needs {needed} monomials, budget is {budget}")]
    BudgetExceeded { needed: usize, budget: usize },

    #[error("implicit stage solve did not converge after {iterations} iterations (residual {residual:e})")]
    NonConvergence { iterations: usize, residual: f64 },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("unknown method {0:?}")]
    UnknownMethod(String),

    #[error("malformed input: {0}")]
    Format(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
