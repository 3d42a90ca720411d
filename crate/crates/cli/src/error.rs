use thiserror::Error;

/// Process exit codes.
pub const EXIT_FAILED_CHECKS: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_INVARIANT: u8 = 3;
pub const EXIT_JACOBI: u8 = 4;
pub const EXIT_NOT_LOCAL_LIE: u8 = 5;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] llg_core::Error),

    #[error("cannot read `{0}`: {1}")]
    Io(String, String),

    #[error("{0}")]
    Usage(String),

    #[error("verification failed")]
    ChecksFailed,
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use llg_core::Error as E;
        match self {
            CliError::Core(E::Parse(_)) | CliError::Io(..) | CliError::Usage(_) => EXIT_PARSE,
            CliError::Core(E::JacobiViolated { .. }) => EXIT_JACOBI,
            CliError::Core(E::NotLocalLie(_)) => EXIT_NOT_LOCAL_LIE,
            CliError::Core(_) => EXIT_INVARIANT,
            CliError::ChecksFailed => EXIT_FAILED_CHECKS,
        }
    }
}
