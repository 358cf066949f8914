use thiserror::Error;

/// A malformed input file. Line numbers are 1-based.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: duplicate transition from state {state} on event {event}")]
    DuplicateTransition { line: usize, state: usize, event: u32 },
    #[error("line {line}: state {value} out of range for {states} states")]
    IdOutOfRange { line: usize, value: usize, states: usize },
    #[error("line {line}: transition on undeclared event {event}")]
    UnknownEventInTrans { line: usize, event: u32 },
    #[error("line {line}: event {event} declared twice")]
    DuplicateEvent { line: usize, event: u32 },
    #[error(transparent)]
    Model(#[from] scdes_core::Error),
}

impl FormatError {
    pub(crate) fn syntax(line: usize, message: impl Into<String>) -> Self {
        FormatError::Syntax { line, message: message.into() }
    }

    /// Line the diagnostic points at, if any.
    pub fn line(&self) -> Option<usize> {
        match *self {
            FormatError::Syntax { line, .. }
            | FormatError::DuplicateTransition { line, .. }
            | FormatError::IdOutOfRange { line, .. }
            | FormatError::UnknownEventInTrans { line, .. }
            | FormatError::DuplicateEvent { line, .. } => Some(line),
            FormatError::Model(_) => None,
        }
    }
}
