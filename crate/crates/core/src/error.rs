use std::fmt;

use crate::affine::SymbolId;

/// A source-located message produced while parsing or checking a specification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl Diagnostic {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        Diagnostic {
            line,
            column,
            message: message.into(),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

/// Newline-separated rendering of a diagnostic list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostics(pub Vec<Diagnostic>);

impl Diagnostics {
    pub fn iter(&self) -> impl Iterator<Item = &Diagnostic> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// True when any diagnostic message contains `needle`.
    pub fn mentions(&self, needle: &str) -> bool {
        self.0.iter().any(|d| d.message.contains(needle))
    }
}

impl fmt::Display for Diagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("specification rejected:\n{0}")]
    Spec(Diagnostics),

    #[error("arithmetic overflow: {0}")]
    Arithmetic(String),

    #[error("assignment does not cover symbol {0}")]
    IncompleteAssignment(SymbolId),

    #[error("event is missing a value for input `{0}`")]
    IncompleteEvent(String),

    #[error("input `{name}` expects a {expected} value")]
    InputType { name: String, expected: &'static str },

    #[error("slot {0} is not resolved")]
    NotResolved(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("generator budget {limit} is too small for {required} noisy dimensions")]
    BudgetTooSmall { limit: usize, required: usize },

    #[error("evaluation stuck at step {step}: unresolved {streams:?}")]
    EvaluationStuck { step: u64, streams: Vec<String> },

    #[error("trace row {row}, column `{column}`: {message}")]
    Trace {
        row: usize,
        column: String,
        message: String,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
