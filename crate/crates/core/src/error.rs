use thiserror::Error;

/// Errors raised anywhere in the pipeline.
///
/// The variants map onto the process exit codes used by the command line
/// tool: usage problems are the caller's fault, data problems come from the
/// input vectors themselves.
#[derive(Debug, Error)]
pub enum Error {
    /// Invalid arguments: dimension mismatch, bad partition, index out of range.
    #[error("usage error: {0}")]
    Usage(String),
    /// A metric could not be evaluated on the given vectors.
    #[error("domain error: {0}")]
    Domain(String),
    /// Malformed input file.
    #[error("ingestion error: {0}")]
    Ingest(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn ingest(msg: impl Into<String>) -> Self {
        Error::Ingest(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
