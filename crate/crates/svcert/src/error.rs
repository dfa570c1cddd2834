use std::path::Path;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },

    #[error("parse error{} at line {line}, column {column}: {message}", path.as_deref().map(|p| format!(" in {p}")).unwrap_or_default())]
    Parse { path: Option<String>, line: usize, column: usize, message: String },

    #[error("usage error: {0}")]
    Usage(String),

    #[error("{0}")]
    Run(String),
}

impl CliError {
    pub fn with_path(mut self, p: &Path) -> Self {
        if let CliError::Parse { path, .. } = &mut self {
            *path = Some(p.display().to_string());
        }
        self
    }

    /// 2 for usage and parse problems, 1 for runtime/certificate failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Parse { .. } | CliError::Usage(_) => 2,
            CliError::Run(_) => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "io",
            CliError::Parse { .. } => "parse",
            CliError::Usage(_) => "usage",
            CliError::Run(_) => "run",
        }
    }
}

impl From<core_linalg::LinalgError> for CliError {
    fn from(e: core_linalg::LinalgError) -> Self {
        CliError::Run(e.to_string())
    }
}

impl From<sylvester::SylvesterError> for CliError {
    fn from(e: sylvester::SylvesterError) -> Self {
        CliError::Run(e.to_string())
    }
}

impl From<perturb::PerturbError> for CliError {
    fn from(e: perturb::PerturbError) -> Self {
        CliError::Run(e.to_string())
    }
}

impl From<sintheta::SinThetaError> for CliError {
    fn from(e: sintheta::SinThetaError) -> Self {
        CliError::Run(e.to_string())
    }
}

impl From<oracle::OracleError> for CliError {
    fn from(e: oracle::OracleError) -> Self {
        CliError::Run(e.to_string())
    }
}
