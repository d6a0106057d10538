use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Shapes of matrices/vectors passed together do not agree.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// An operation was called on a state that does not support it.
    #[error("usage error: {0}")]
    Usage(String),

    #[error("inconsistent system: rank(U|b) > rank(U), no solution exists")]
    Inconsistent,

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// The decoder grew past every vertex of the Tanner graph without
    /// reaching a consistent system; the syndrome is outside the row space.
    #[error("decoder did not terminate after {iterations} growth steps (syndrome not in the image of H)")]
    NonTermination { iterations: usize },

    #[error("shot {shot} (seed {seed}) failed: {source}")]
    Shot {
        seed: u64,
        shot: u64,
        #[source]
        source: Box<Error>,
    },

    #[error("shot {shot} (seed {seed}) returned a correction whose syndrome does not match")]
    InvalidCorrection { seed: u64, shot: u64 },
}
