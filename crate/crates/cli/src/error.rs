use std::process::ExitCode;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Malformed input, bad flags or an invalid configuration.
    #[error("{0}")]
    Input(String),
    /// The statistic is undefined for this data, e.g. a constant series.
    #[error("{0}")]
    Degenerate(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Input(_) => ExitCode::from(2),
            CliError::Degenerate(_) => ExitCode::from(3),
        }
    }
}

impl From<snbs::Error> for CliError {
    fn from(e: snbs::Error) -> Self {
        match e {
            snbs::Error::DegenerateNormalizer | snbs::Error::AllBlocksDegenerate => {
                CliError::Degenerate(e.to_string())
            }
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(format!("i/o: {e}"))
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Input(format!("csv: {e}"))
    }
}

pub type CliResult<T> = Result<T, CliError>;
