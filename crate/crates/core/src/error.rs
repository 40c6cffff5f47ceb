use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ballot {voter}: unknown grade label {label:?}")]
    UnknownGrade { voter: String, label: String },

    #[error("ballot {voter}: unknown candidate {candidate:?}")]
    UnknownCandidate { voter: String, candidate: String },

    #[error("duplicate voter id {0:?}")]
    DuplicateVoter(String),

    #[error("ballot {voter}: candidate {candidate:?} graded more than once")]
    DuplicateGrade { voter: String, candidate: String },

    #[error("duplicate candidate id {0:?}")]
    DuplicateCandidate(String),

    #[error("invalid grade scale: {0}")]
    InvalidScale(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("no ballots")]
    NoBallots,

    #[error("malformed bracket ballot {voter}: {reason}")]
    MalformedBracketBallot { voter: String, reason: String },

    #[error("instance too large for exhaustive enumeration ({size} > {limit}); use sampling mode")]
    LimitExceeded { size: usize, limit: usize },

    #[error("insufficient weak-approval votes: shift of {shift} needs {needed}, only {available} available")]
    InsufficientWeakApproval {
        shift: u64,
        needed: u64,
        available: u64,
    },

    #[error("ballot input: {0}")]
    Input(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code for the CLI: 1 for bad ballots or input, 2 for bad configuration.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidScale(_) | Error::Config(_) | Error::DuplicateCandidate(_) => 2,
            _ => 1,
        }
    }
}
