use thiserror::Error;

/// Process-level error with the exit code it maps to: 2 for bad flags or
/// configs, 1 for failures while running or writing.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Runtime(_) => 1,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}

/// Config-shaped core errors come from flag values, everything else from
/// the run itself.
impl From<qwalk_core::Error> for CliError {
    fn from(e: qwalk_core::Error) -> Self {
        use qwalk_core::Error as E;
        match e {
            E::NonFiniteAngle(_) | E::InvalidInitialSpinor | E::InvalidSweepConfig(_) => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Runtime(e.to_string()),
        }
    }
}
