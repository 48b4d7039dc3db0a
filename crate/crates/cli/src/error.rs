use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid config:\n  {}", .0.join("\n  "))]
    Config(Vec<String>),
    #[error("{0}: {1}")]
    Io(String, #[source] std::io::Error),
    #[error("convergence gate failed:\n  {}", .0.join("\n  "))]
    Gate(Vec<String>),
    #[error(transparent)]
    Core(#[from] vqls_core::Error),
}

impl CliError {
    /// Process exit status.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Io(..) => 3,
            CliError::Gate(_) => 4,
            CliError::Core(_) => 2,
        }
    }
}
