use std::fmt;

use thiserror::Error;

use crate::lexer::Span;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{span}: {message}")]
pub struct LexError {
    pub span: Span,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub struct ParseError {
    pub span: Span,
    /// Token kinds or constructs that would have been accepted here.
    pub expected: Vec<String>,
    pub found: String,
    pub message: Option<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.span)?;
        if let Some(message) = &self.message {
            return write!(f, "{message}");
        }
        write!(f, "unexpected {}", self.found)?;
        if !self.expected.is_empty() {
            write!(f, ", expected {}", self.expected.join(" or "))?;
        }
        Ok(())
    }
}

/// Exit status shared by the command-line front end and library callers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    NoAnswerSets = 1,
    SyntaxError = 2,
    RestrictionViolated = 3,
    LimitExceeded = 4,
    Usage = 64,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("lexical error at {0}")]
    Lex(#[from] LexError),
    #[error("syntax error at {0}")]
    Parse(#[from] ParseError),
    #[error("program violates restrictions:\n{}", .0.join("\n"))]
    Restriction(Vec<String>),
    #[error("derivable atom {atom} exceeds the universe bounds ({reason})")]
    BoundExceeded { atom: String, reason: String },
    #[error("{atoms} atoms left open for enumeration, above the brute-force limit of {limit}")]
    CapacityExceeded { atoms: usize, limit: usize },
}

impl Error {
    pub fn exit_status(&self) -> ExitStatus {
        match self {
            Error::Lex(_) | Error::Parse(_) => ExitStatus::SyntaxError,
            Error::Restriction(_) => ExitStatus::RestrictionViolated,
            Error::BoundExceeded { .. } | Error::CapacityExceeded { .. } => {
                ExitStatus::LimitExceeded
            }
        }
    }

    /// Span of the offending input, for syntax errors.
    pub fn span(&self) -> Option<Span> {
        match self {
            Error::Lex(e) => Some(e.span),
            Error::Parse(e) => Some(e.span),
            _ => None,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
