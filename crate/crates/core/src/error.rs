use thiserror::Error;

/// Errors raised by the solver library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid state at cell {cell:?}: {detail}")]
    InvalidState { cell: [isize; 3], detail: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("singular tridiagonal system (zero pivot at row {row})")]
    SingularSystem { row: usize },

    #[error("line of {len} cells is too short (need at least {min})")]
    LineTooShort { len: usize, min: usize },

    #[error("unknown case `{0}`")]
    UnknownCase(String),

    #[error("non-finite value at step {step}, cell {cell:?}")]
    NonFinite { step: usize, cell: [isize; 3] },

    #[error("index {index} out of range (extent {extent})")]
    OutOfRange { index: usize, extent: usize },
}

impl Error {
    pub(crate) fn invalid(detail: impl Into<String>) -> Self {
        Error::InvalidState {
            cell: [0, 0, 0],
            detail: detail.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
