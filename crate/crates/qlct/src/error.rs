use std::path::PathBuf;

/// Process exit status for each error class.
pub mod exit {
    pub const OK: u8 = 0;
    pub const INPUT: u8 = 2;
    pub const INVARIANT: u8 = 3;
    pub const VERIFICATION: u8 = 4;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{}: {msg}", path.display())]
    Input { path: PathBuf, msg: String },
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Invariant(#[from] qlct_core::Error),
    #[error("{failed} required check(s) failed: {ids}")]
    Verification { failed: usize, ids: String },
}

impl CliError {
    pub fn input(path: impl Into<PathBuf>, msg: impl ToString) -> Self {
        CliError::Input { path: path.into(), msg: msg.to_string() }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input { .. } | CliError::Io { .. } => exit::INPUT,
            CliError::Config(_) | CliError::Invariant(_) => exit::INVARIANT,
            CliError::Verification { .. } => exit::VERIFICATION,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
