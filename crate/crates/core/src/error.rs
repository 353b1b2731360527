use alloc::string::String;

/// Input-validation failures shared across the crate.
///
/// Fit routines that can fail *after* making progress (non-convergence)
/// carry their own error types so the best iterate is not lost; see
/// [`crate::trajectory::MleError`] and [`crate::timeresolved::RamseyError`].
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("input is empty")]
    Empty,
    #[error("{0}")]
    InvalidInput(String),
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("outcome label {0:?} is not covered by the coarse-graining map")]
    UnmappedLabel(String),
    #[error("boundary margin {epsilon} is infeasible here (must be <= {limit})")]
    InfeasibleMargin { epsilon: f64, limit: f64 },
    #[error("probability {0} outside the open interval (0, 1)")]
    DegenerateProbability(f64),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
