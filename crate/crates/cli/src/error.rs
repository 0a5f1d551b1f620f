use std::io;

/// Errors surfaced by the command-line front end.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Malformed command line.
    #[error("{0}")]
    Usage(String),

    /// A problem file or argument failed validation; `path` names the
    /// offending JSON field or flag.
    #[error("{path}: {message}")]
    Invalid { path: String, message: String },

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },

    #[error(transparent)]
    Core(#[from] fermat_core::Error),
}

impl CliError {
    pub fn invalid(path: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Invalid {
            path: path.into(),
            message: message.into(),
        }
    }

    /// 1 for parse and validation failures, 2 for unsupported inputs the
    /// theory does not cover, 3 for divergence.
    pub fn exit_code(&self) -> u8 {
        use fermat_core::Error as E;
        match self {
            CliError::Core(E::UnsupportedPair { .. })
            | CliError::Core(E::MultipleActiveTargets { .. })
            | CliError::Core(E::AmbiguousCase { .. }) => 2,
            CliError::Core(E::NonFiniteIterate { .. }) => 3,
            _ => 1,
        }
    }
}
