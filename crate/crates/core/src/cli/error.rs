use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    MethodMismatch(String),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Compute(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::MethodMismatch(_) => 3,
            CliError::Io(_) => 4,
            CliError::Compute(_) => 1,
        }
    }
}

impl From<discord_lab::Error> for CliError {
    fn from(e: discord_lab::Error) -> Self {
        use discord_lab::Error as E;
        match e {
            E::OptimizerFailure { .. } | E::ConvergenceFailure { .. } => CliError::Compute(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}
