use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum CoreError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    #[error("jet order {have} insufficient, need at least {need}")]
    JetOrder { have: usize, need: usize },

    #[error("{0}")]
    Parse(#[from] crate::expr::ParseError),

    #[error("{0}")]
    Eval(#[from] crate::expr::EvalError),

    #[error("{0}")]
    Mismatch(String),
}
