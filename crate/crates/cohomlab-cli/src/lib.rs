//! Front end for the cohomlab engine: JSON input, reports, fuzzing.

pub mod fuzz;
pub mod input;
pub mod render;
pub mod report;

use thiserror::Error;

pub use input::{Input, InputDocument};
pub use render::{render, Format, View};
pub use report::{analyze, AnalyzeOptions, ReportDocument};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot access {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation failed:\n  {}", .0.join("\n  "))]
    Validation(Vec<String>),
    #[error("unknown builtin {0:?}; known: {}", cohomlab::geometry::builtins::NAMES.join(", "))]
    UnknownBuiltin(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            _ => 1,
        }
    }
}

/// Input for a builtin name, plus the bytes its hash is taken over.
pub fn builtin_input(name: &str) -> Result<(Input, Vec<u8>), CliError> {
    let b = cohomlab::geometry::builtins::builtin(name).ok_or_else(|| CliError::UnknownBuiltin(name.to_string()))?;
    let input = Input::Lie(input::LieInput { algebra: b.algebra, complex: b.complex, omega: b.omega });
    Ok((input, format!("builtin:{name}").into_bytes()))
}

pub fn file_input(path: &std::path::Path) -> Result<(Input, Vec<u8>), CliError> {
    let raw = std::fs::read(path).map_err(|e| CliError::Io { path: path.display().to_string(), source: e })?;
    let text = std::str::from_utf8(&raw).map_err(|e| CliError::Parse(e.to_string()))?;
    let input = input::parse(text)?.build()?;
    Ok((input, raw))
}

/// `COHOMLAB_THREADS`, else the available parallelism.
pub fn thread_count() -> usize {
    std::env::var("COHOMLAB_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}
