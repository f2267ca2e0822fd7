use std::fmt;

use thiserror::Error;

/// Grid location of a cell, in interior (ghost-free) indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CellIndex {
    pub i: isize,
    pub j: isize,
}

impl fmt::Display for CellIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.i, self.j)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("non-physical state{}: rho = {rho}, p = {p}", cell.map(|c| format!(" at cell {c}")).unwrap_or_default())]
    Positivity { rho: f64, p: f64, cell: Option<CellIndex> },

    #[error("config error{}{}: {message}",
        line.map(|l| format!(" on line {l}")).unwrap_or_default(),
        key.as_ref().map(|k| format!(" (key `{k}`)")).unwrap_or_default())]
    Config {
        line: Option<usize>,
        key: Option<String>,
        message: String,
    },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("no shock crossing found in row {row}")]
    ShockNotFound { row: usize },

    #[error("malformed snapshot: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn config(message: impl Into<String>) -> Self {
        Error::Config {
            line: None,
            key: None,
            message: message.into(),
        }
    }

    /// Attach a cell location to a positivity failure.
    pub fn at_cell(self, i: isize, j: isize) -> Self {
        match self {
            Error::Positivity { rho, p, .. } => Error::Positivity {
                rho,
                p,
                cell: Some(CellIndex { i, j }),
            },
            other => other,
        }
    }

    pub fn is_positivity(&self) -> bool {
        matches!(self, Error::Positivity { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
