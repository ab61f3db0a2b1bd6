use thiserror::Error;

/// Errors produced by the library.
///
/// The variants are grouped by the exit code the CLI maps them to:
/// structural/validation problems (2), unmet preconditions or theorem
/// hypotheses (3), and resource caps (4). `Internal` signals a broken
/// invariant and is never expected on valid inputs.
#[derive(Debug, Error)]
pub enum Error {
    #[error("structural error: {0}")]
    Structure(String),

    /// A monodromy column is zero, so the cover would be unramified at that
    /// branch point and the point should simply be dropped.
    #[error("column {index} of the monodromy matrix is zero (cover unramified at t_{index})")]
    ZeroColumn { index: usize },

    /// The columns do not sum to zero, which would force ramification over
    /// infinity; move a branch point to a finite position instead.
    #[error("columns do not sum to zero (cover ramified at infinity)")]
    RamifiedAtInfinity,

    #[error("a family needs at least 3 branch points, got r = {r}")]
    TooFewBranchPoints { r: usize },

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("non-invariant product: {0}")]
    NonInvariantProduct(String),

    #[error("candidate cap exceeded; resume token: {token}")]
    CapExceeded { token: String },

    #[error("automorphism enumeration aborted: {0}")]
    AutomorphismCap(String),

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// Process exit code for the CLI: 2 validation, 3 precondition or
    /// hypothesis not met, 4 resource cap, 1 internal.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Structure(_)
            | Error::ZeroColumn { .. }
            | Error::RamifiedAtInfinity
            | Error::TooFewBranchPoints { .. } => 2,
            Error::Unsupported(_) | Error::NonInvariantProduct(_) => 3,
            Error::CapExceeded { .. } | Error::AutomorphismCap(_) => 4,
            Error::Internal(_) => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
