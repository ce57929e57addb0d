use thiserror::Error;

/// Errors raised by context operations, parsers and the verification harness.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An object or attribute set was used with a context it does not belong to.
    #[error("set belongs to a different context")]
    ForeignSet,

    #[error("{kind} index {index} out of range (size {len})")]
    IndexOutOfRange {
        kind: &'static str,
        index: usize,
        len: usize,
    },

    #[error("unknown {kind} name {name:?}")]
    UnknownName { kind: &'static str, name: String },

    /// The operation is not defined for the given arguments.
    #[error("{0}")]
    Domain(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Refusal to run an exhaustive computation beyond its size guard.
    #[error("size guard exceeded: {0}")]
    Guard(String),

    /// A property that holds by theory failed; this signals a bug.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }
}
