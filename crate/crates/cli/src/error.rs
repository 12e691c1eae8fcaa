use std::fmt;

use sfnrec::drs::DrsError;
use sfnrec::{GraphError, TheoryError};

/// Failure of a command, carrying its exit status.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Infeasible(String),
    ScenarioParse(String),
    Other(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Infeasible(_) => 3,
            CliError::ScenarioParse(_) => 4,
            CliError::Other(_) => 1,
        }
    }

    /// Maps a generation failure: bad parameters and unrealizable degree
    /// sequences are both infeasible.
    pub fn generation(e: impl fmt::Display) -> Self {
        CliError::Infeasible(e.to_string())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Infeasible(m) => write!(f, "infeasible: {m}"),
            CliError::ScenarioParse(m) => write!(f, "{m}"),
            CliError::Other(m) => write!(f, "{m}"),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Other(format!("i/o error: {e}"))
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Other(format!("csv error: {e}"))
    }
}

impl From<TheoryError> for CliError {
    fn from(e: TheoryError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::Io(_) | GraphError::Parse { .. } => CliError::Other(e.to_string()),
            other => CliError::generation(other),
        }
    }
}

impl From<DrsError> for CliError {
    fn from(e: DrsError) -> Self {
        match e {
            DrsError::Parse(_) => CliError::ScenarioParse(e.to_string()),
            DrsError::Infeasible(_) => CliError::Infeasible(e.to_string()),
            DrsError::Config(_) | DrsError::PlacementMismatch(_) => CliError::Usage(e.to_string()),
            DrsError::Graph(g) => g.into(),
            DrsError::Invalid(_) => CliError::Other(e.to_string()),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
