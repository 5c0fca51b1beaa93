use std::path::PathBuf;

use thiserror::Error;

/// Everything that makes an invocation fail before a verdict is reached.
/// The CLI maps all of these to exit code 1.
#[derive(Debug, Error)]
pub enum CliError {
    /// The instance violates the schema at `path` (`sigma2[2]`, `C[0][1]`, ...).
    #[error("{path}: {message}")]
    Schema { path: String, message: String },
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}: {source}", path.display())]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
    /// `C` is reducible; power concentrates on these sink components
    /// (1-based labels).
    #[error("interaction matrix C is reducible; sink components {}", fmt_components(.0))]
    Reducible(Vec<Vec<usize>>),
    #[error(transparent)]
    Model(#[from] wisdom_core::Error),
}

impl CliError {
    pub fn schema(path: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Schema {
            path: path.into(),
            message: message.into(),
        }
    }
}

fn fmt_components(parts: &[Vec<usize>]) -> String {
    parts
        .iter()
        .map(|c| {
            let labels: Vec<String> = c.iter().map(|v| v.to_string()).collect();
            format!("{{{}}}", labels.join(", "))
        })
        .collect::<Vec<_>>()
        .join(" ")
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
