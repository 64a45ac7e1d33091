use std::fmt;

/// Errors produced by parsers, constructors, and the exact solvers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed or out-of-range input: bad coordinates, unequal part
    /// sizes, intra-part edges where none are allowed, and so on.
    Input(String),
    /// A text instance could not be parsed; `line` is 1-based.
    Parse { line: usize, msg: String },
    /// An exact computation would exceed its configured budget or guard.
    Budget {
        what: &'static str,
        required: u128,
        limit: u128,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Error {
        Error::Input(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Error {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    /// Re-tags an error as a parse failure at `line`, keeping the bare
    /// message.
    pub(crate) fn at_line(self, line: usize) -> Error {
        let msg = match self {
            Error::Input(msg) => msg,
            Error::Parse { msg, .. } => msg,
            budget @ Error::Budget { .. } => budget.to_string(),
        };
        Error::Parse { line, msg }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Input(msg) => write!(f, "input error: {msg}"),
            Error::Parse { line, msg } => write!(f, "parse error at line {line}: {msg}"),
            Error::Budget {
                what,
                required,
                limit,
            } => write!(
                f,
                "budget exceeded: {what} requires {required}, limit is {limit}"
            ),
        }
    }
}

impl std::error::Error for Error {}
