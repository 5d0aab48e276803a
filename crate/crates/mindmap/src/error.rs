use std::path::Path;

/// Top-level failure, mapped onto the process exit code.
#[derive(Debug, thiserror::Error)]
pub enum AppError {
    /// Unreadable or malformed input data.
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Query(String),
    #[error("{0}")]
    Config(String),
}

impl AppError {
    pub fn exit_code(&self) -> i32 {
        match self {
            AppError::Input(_) => 1,
            AppError::Query(_) => 2,
            AppError::Config(_) => 3,
        }
    }

    pub(crate) fn io(path: &Path, err: std::io::Error) -> Self {
        AppError::Input(format!("{}: {err}", path.display()))
    }
}
