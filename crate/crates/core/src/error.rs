use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Alphabet sizes outside the breakpoint look-up table.
    #[error("unsupported alphabet size {0}: supported range is 3-8")]
    UnsupportedAlphabet(usize),

    #[error("empty shape: image contains no foreground pixels")]
    EmptyShape,

    #[error("degenerate shape: {0}")]
    DegenerateShape(String),

    #[error("degenerate class '{0}': no words remain after conflict removal")]
    DegenerateClass(String),

    /// Byte-oriented parse failure (binary formats).
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    /// Line-oriented parse failure (text formats).
    #[error("parse error at line {line}: {message}")]
    ParseLine { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn parse(offset: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            message: msg.into(),
        }
    }

    pub(crate) fn parse_line(line: usize, msg: impl Into<String>) -> Self {
        Error::ParseLine {
            line,
            message: msg.into(),
        }
    }
}
