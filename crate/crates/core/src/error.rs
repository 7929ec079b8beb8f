use thiserror::Error;

/// Errors raised by the library. The CLI maps every variant to exit status 1.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    /// `line` is 1-based; 0 marks inline text rather than a file.
    #[error("parse error{}: {msg}", at_line(*.line))]
    Parse { line: usize, msg: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("no epimorphism to Z: {0}")]
    NoEpimorphism(String),
    /// A computation produced a result that the underlying mathematics rules out.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

fn at_line(line: usize) -> String {
    if line == 0 {
        String::new()
    } else {
        format!(" at line {line}")
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}
