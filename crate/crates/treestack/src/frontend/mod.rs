//! Program front ends: the postfix DSL and bracketed tree notation.

mod bracketed;
mod postfix;

pub use bracketed::{compile_bracketed, CompileOptions};
pub use postfix::{format_postfix, parse_postfix};

use thiserror::Error;

/// A parse failure with a 1-based source position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: {message}")]
pub struct SyntaxError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl SyntaxError {
    pub(crate) fn new(line: usize, col: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            col,
            message: message.into(),
        }
    }
}
