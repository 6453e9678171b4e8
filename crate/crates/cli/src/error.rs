use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Unreadable or invalid input; exit code 2.
    #[error("{0}")]
    Input(String),
    /// A numerical contract failed; exit code 3.
    #[error("{0}")]
    Contract(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Contract(_) => 3,
        }
    }

    pub fn input(field: &str, msg: impl std::fmt::Display) -> Self {
        CliError::Input(format!("{field}: {msg}"))
    }
}
