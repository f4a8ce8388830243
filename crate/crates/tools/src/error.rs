use std::io;
use std::path::{Path, PathBuf};

use thiserror::Error;

pub type ToolResult<T> = Result<T, ToolError>;

#[derive(Debug, Error)]
pub enum ToolError {
    #[error(transparent)]
    Core(#[from] protest_core::Error),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("{}{}: {message}", path.display(), line.map(|l| format!(":{l}")).unwrap_or_default())]
    Format { path: PathBuf, line: Option<usize>, message: String },
    #[error("configuration error: {0}")]
    Config(String),
}

impl ToolError {
    pub fn io(path: &Path, source: io::Error) -> Self {
        ToolError::Io { path: path.to_path_buf(), source }
    }

    pub fn format(path: &Path, line: Option<usize>, message: impl Into<String>) -> Self {
        ToolError::Format { path: path.to_path_buf(), line, message: message.into() }
    }

    /// Attaches a file path to a core error raised while parsing that file.
    pub fn in_file(path: &Path, err: protest_core::Error) -> Self {
        match err {
            protest_core::Error::Parse { line, message } => ToolError::format(path, Some(line), message),
            protest_core::Error::HeaderMismatch { expected, found } => {
                ToolError::format(path, Some(1), format!("header mismatch: expected `{expected}`, found `{found}`"))
            }
            other => ToolError::Core(other),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            ToolError::Core(e) => e.kind(),
            ToolError::Io { .. } => "io-error",
            ToolError::Format { .. } => "format-error",
            ToolError::Config(_) => "config-error",
        }
    }

    /// Process exit code; distinct per error kind.
    pub fn exit_code(&self) -> i32 {
        use protest_core::Error as E;
        match self {
            ToolError::Io { .. } => 3,
            ToolError::Format { .. } => 4,
            ToolError::Config(_) => 5,
            ToolError::Core(e) => match e {
                E::InsufficientJudgments { .. } => 10,
                E::ExcessJudgments { .. } => 11,
                E::TypeMismatch(_) => 12,
                E::DuplicateJudgment(_) => 13,
                E::InfeasibleDesign(_) => 14,
                E::DesignNotFound { .. } => 15,
                E::InvalidComparison(_) => 16,
                E::DegenerateMle(_) => 17,
                E::InsufficientItems { .. } => 18,
                E::InvalidStrength(_) => 19,
                E::UndefinedAuc => 20,
                E::UndefinedCorrelation => 21,
                E::InsufficientSamples { .. } => 22,
                E::LengthMismatch { .. } => 23,
                E::InvalidDof(_) => 24,
                E::UndefinedThreshold => 25,
                E::InvalidRegion(_) => 26,
                E::Config(_) => 5,
                E::Range(_) => 27,
                E::HeaderMismatch { .. } => 28,
                E::Parse { .. } => 29,
                E::DuplicateId(_) => 30,
                E::JoinEmpty => 31,
            },
        }
    }

    /// Machine-readable report printed on failure.
    pub fn report(&self) -> serde_json::Value {
        let mut report = serde_json::json!({
            "kind": self.kind(),
            "exit_code": self.exit_code(),
            "message": self.to_string(),
        });
        match self {
            ToolError::Io { path, .. } => report["path"] = path.display().to_string().into(),
            ToolError::Format { path, line, .. } => {
                report["path"] = path.display().to_string().into();
                report["line"] = (*line).into();
            }
            ToolError::Core(protest_core::Error::Parse { line, .. }) => report["line"] = (*line).into(),
            _ => {}
        }
        report
    }
}
