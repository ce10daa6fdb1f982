use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("cap exceeded: {what} is {actual}, limit {limit}")]
    CapExceeded {
        what: &'static str,
        actual: u128,
        limit: u128,
    },

    #[error("no reachable candidates: |sigma(S_A)| = {influenced}, touched communities = {communities}, parents found = {parents}")]
    NoCandidates {
        influenced: usize,
        communities: usize,
        parents: usize,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    /// Process exit code used by the command line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::Precondition(_) => 2,
            Error::Parse { .. } | Error::Domain(_) | Error::Io(_) | Error::NoCandidates { .. } => 3,
            Error::CapExceeded { .. } => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
