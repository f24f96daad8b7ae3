use std::fmt;
use std::path::Path;
use std::process::ExitCode;

#[derive(Debug)]
pub enum CliError {
    /// A diagnostic found a violation (exit 1).
    Violation(String),
    /// Unusable input (exit 2).
    Config(String),
    /// The integrator stopped early (exit 3).
    Integration(String),
    /// Output could not be written (exit 4).
    Filesystem(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Violation(_) => 1,
            CliError::Config(_) => 2,
            CliError::Integration(_) => 3,
            CliError::Filesystem(_) => 4,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Violation(_) => "violation",
            CliError::Config(_) => "config",
            CliError::Integration(_) => "integration",
            CliError::Filesystem(_) => "filesystem",
        }
    }

    pub fn exit(&self) -> ExitCode {
        ExitCode::from(self.code())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msg = match self {
            CliError::Violation(m) | CliError::Config(m) | CliError::Integration(m) | CliError::Filesystem(m) => m,
        };
        write!(f, "error[{}] code={}: {msg}", self.kind(), self.code())
    }
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)
            .map_err(|e| CliError::Filesystem(format!("{}: {e}", dir.display())))?;
    }
    std::fs::write(path, contents).map_err(|e| CliError::Filesystem(format!("{}: {e}", path.display())))
}
