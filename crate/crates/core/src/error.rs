use thiserror::Error;

/// Errors raised by every operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed text input. `pos` is a byte offset into the parsed string
    /// (or a 1-based line number for line-oriented formats, see `line`).
    #[error("parse error at {}: {msg}", location(*.line, *.pos))]
    Parse {
        line: Option<usize>,
        pos: usize,
        msg: String,
    },
    /// A value outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// Structurally invalid piecewise map.
    #[error("invalid map: {0}")]
    Validation(String),
    /// Input violates a documented precondition.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// A configured resource cap was exceeded.
    #[error("resource limit: {0}")]
    Resource(String),
    /// An internal postcondition failed. Always a bug.
    #[error("contract violated: {0}")]
    Contract(String),
}

fn location(line: Option<usize>, pos: usize) -> String {
    match line {
        Some(l) => format!("line {l}, column {}", pos + 1),
        None => format!("position {pos}"),
    }
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line: None,
            pos,
            msg: msg.into(),
        }
    }

    /// Attach a 1-based line number to a parse error coming from a
    /// single-line sub-parser.
    pub(crate) fn at_line(self, line: usize) -> Self {
        match self {
            Error::Parse { pos, msg, .. } => Error::Parse {
                line: Some(line),
                pos,
                msg,
            },
            Error::Domain(m) => Error::Domain(format!("line {line}: {m}")),
            Error::Resource(m) => Error::Resource(format!("line {line}: {m}")),
            other => other,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
