//! Text formats for parity-check matrices: alist (sparse scalar), expmat
//! (exponent matrix of a quasi-cyclic code) and a JSON polynomial form.

mod alist;
mod expmat;
mod polyjson;

pub use alist::{parse_alist, write_alist};
pub use expmat::{parse_expmat, write_expmat, ParsedExpmat};
pub use polyjson::{parse_polyjson, write_polyjson};

use thiserror::Error;

use crate::matrix::MatrixError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("column and row lists disagree: {0}")]
    InconsistentSupports(String),
    #[error("line {line}: exponent {exponent} is outside [0, {lifting})")]
    ExponentOutOfRange { line: usize, exponent: i64, lifting: usize },
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

fn parse_error(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Parse {
        line,
        message: message.into(),
    }
}

/// Non-blank lines with their 1-based numbers, `#` comments removed.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}
