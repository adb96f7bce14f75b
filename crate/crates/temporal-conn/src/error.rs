use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input: out-of-range vertex, wrong graph shape, bad parameter.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The instance admits no feasible solution for the requested problem.
    #[error("infeasible: {0}")]
    Infeasible(String),

    /// The instance exceeds a solver's hard size cap.
    #[error("{what} exceeds cap: {actual} > {cap}")]
    CapExceeded {
        what: &'static str,
        cap: usize,
        actual: usize,
    },

    /// Text-format parse error with a 1-based line number.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// Violated internal invariant; indicates a construction bug.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
