use thiserror::Error;

/// Errors produced by the simulator.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum QabnError {
    /// A bit sequence did not match the arity of the function it was fed to.
    #[error("arity mismatch: expected {expected} input bits, got {got}")]
    Arity { expected: usize, got: usize },

    /// An argument was outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Malformed textual input (function names, input states, spec files).
    #[error("parse error: {0}")]
    Parse(String),

    /// Parse error tied to a line of a spec file.
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },

    /// Qubit counts of a state and an operator disagree.
    #[error("size mismatch: state has {state} qubits, operator has {operator}")]
    SizeMismatch { state: usize, operator: usize },

    /// Index out of range (qubits, steps).
    #[error("{what} {index} out of range (limit {limit})")]
    OutOfRange { what: &'static str, index: usize, limit: usize },

    /// A density matrix failed positivity or trace checks.
    #[error("numerical domain error: {0}")]
    Numerical(String),

    /// A problem exceeds the configured resource guard.
    #[error("resource guard: {0}")]
    Resource(String),
}

impl QabnError {
    /// Attach a spec-file line number to a parse or domain error.
    pub fn at_line(self, line: usize) -> QabnError {
        match self {
            QabnError::Line { .. } => self,
            QabnError::Parse(message) | QabnError::Domain(message) => QabnError::Line { line, message },
            other => QabnError::Line { line, message: other.to_string() },
        }
    }
}

pub type Result<T> = std::result::Result<T, QabnError>;
