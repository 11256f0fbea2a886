use thiserror::Error;

/// Failures that stop a command before it can report a verdict.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("resource cap exceeded: {0}")]
    Cap(String),
}

impl CliError {
    /// Process exit code: 2 for bad input, 3 for an enumeration cap.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Cap(_) => 3,
        }
    }
}

impl From<regforge_core::Error> for CliError {
    fn from(e: regforge_core::Error) -> Self {
        if e.is_resource_cap() {
            CliError::Cap(e.to_string())
        } else {
            CliError::Input(e.to_string())
        }
    }
}
