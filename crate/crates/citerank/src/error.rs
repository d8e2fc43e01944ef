use std::path::PathBuf;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const MALFORMED_INPUT: i32 = 1;
    pub const UNKNOWN_REFERENCE_SET: i32 = 2;
    pub const INTERNAL: i32 = 3;
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] citerank_core::Error),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{source_name}, line {line}: {message}")]
    Malformed {
        source_name: String,
        line: u64,
        message: String,
    },

    #[error("{source_name}: {message}")]
    Format { source_name: String, message: String },

    #[error("{0}")]
    Usage(String),

    #[error("{0}")]
    Internal(String),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub fn malformed(source_name: &str, line: u64, message: impl Into<String>) -> Self {
        Error::Malformed {
            source_name: source_name.to_string(),
            line,
            message: message.into(),
        }
    }

    pub fn format(source_name: &str, message: impl ToString) -> Self {
        Error::Format {
            source_name: source_name.to_string(),
            message: message.to_string(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Core(err) => core_exit_code(err),
            Error::Io { .. } | Error::Malformed { .. } | Error::Format { .. } | Error::Usage(_) => {
                exit::MALFORMED_INPUT
            }
            Error::Internal(_) => exit::INTERNAL,
        }
    }
}

fn core_exit_code(err: &citerank_core::Error) -> i32 {
    use citerank_core::Error as E;
    match err {
        E::UnknownReferenceSet(_) => exit::UNKNOWN_REFERENCE_SET,
        E::PortfolioItem { source, .. } | E::TableRow { source, .. } => core_exit_code(source),
        _ => exit::MALFORMED_INPUT,
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
