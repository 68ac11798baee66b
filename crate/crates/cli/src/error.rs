use thiserror::Error;

/// Exit statuses. Verdicts never change the status except through `--assert`.
pub mod code {
    pub const OK: i32 = 0;
    pub const ASSERTION_FAILED: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const PARSE: i32 = 3;
    pub const RANGE: i32 = 4;
    pub const PRECONDITION: i32 = 5;
    pub const STRUCTURE: i32 = 6;
    pub const IO: i32 = 7;
    pub const SIZE_LIMIT: i32 = 8;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] jetfrob::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error("assertion `{0}` does not hold")]
    AssertionFailed(String),
    /// An error that still carries the rendered report.
    #[error("{0}")]
    WithOutput(Box<CliError>, String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use jetfrob::Error as E;
        match self {
            CliError::Core(e) => match e {
                E::Parse { .. } => code::PARSE,
                E::Range(_) | E::NotPrime(_) => code::RANGE,
                E::Precondition(_) => code::PRECONDITION,
                E::FieldMismatch(..) | E::TableMismatch(..) | E::Malformed(_) => code::STRUCTURE,
                E::SizeLimit(_) => code::SIZE_LIMIT,
            },
            CliError::Usage(_) => code::USAGE,
            CliError::Io(_) => code::IO,
            CliError::AssertionFailed(_) => code::ASSERTION_FAILED,
            CliError::WithOutput(e, _) => e.exit_code(),
        }
    }

    pub fn with_output(self, output: String) -> CliError {
        CliError::WithOutput(Box::new(self), output)
    }
}

pub type CliResult<T> = Result<T, CliError>;
