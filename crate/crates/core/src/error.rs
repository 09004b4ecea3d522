use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(
        "graph has {n} vertices, above the cap of {cap} (raise it with --cap or TORIC_BETTI_CAP)"
    )]
    CapExceeded { n: usize, cap: usize },

    #[error("line {line}: {msg}")]
    EdgeList { line: usize, msg: String },

    #[error("graph6: {0}")]
    Graph6(String),

    #[error("invalid graph family: {0}")]
    InvalidFamily(String),

    #[error("series: {0}")]
    Series(String),

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),

    #[error("inexact division: {0}")]
    Inexact(String),
}

impl Error {
    pub(crate) fn series(msg: impl Into<String>) -> Self {
        Error::Series(msg.into())
    }
}
