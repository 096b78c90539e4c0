//! Command-line driver: configuration, subcommands and text outputs.

pub mod commands;
pub mod config;
pub mod output;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    /// Process exit status: 2 for configuration errors, 3 for numerical
    /// failures and 1 for anything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl From<igfv::Error> for CliError {
    fn from(e: igfv::Error) -> Self {
        use igfv::Error as E;
        match e {
            E::Config(_) | E::UnknownCase(_) | E::LineTooShort { .. } | E::OutOfRange { .. } => {
                CliError::Config(e.to_string())
            }
            E::InvalidState { .. } | E::SingularSystem { .. } | E::NonFinite { .. } => CliError::Numerical(e.to_string()),
        }
    }
}
