use alloc::string::String;
use alloc::vec::Vec;

use crate::automaton::{EventId, StateId};

/// Errors produced by construction and by the automaton operations.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("duplicate event id {0}")]
    DuplicateEvent(EventId),
    #[error("event {0} is not in the alphabet")]
    UnknownEvent(EventId),
    #[error("state {state} out of range (state count {state_count})")]
    StateOutOfRange { state: StateId, state_count: usize },
    #[error("automaton must have at least one state")]
    NoStates,
    #[error("duplicate transition from state {state} on event {event}")]
    DuplicateTransition { state: StateId, event: EventId },
    #[error("event {0} already belongs to the alphabet")]
    AlphabetOverlap(EventId),
    #[error("alphabets differ on events {0:?}")]
    AlphabetMismatch(Vec<EventId>),
    #[error("shared event {0} has conflicting controllability")]
    ControllabilityConflict(EventId),
    #[error("horizon {horizon} exceeds the limit of {limit}")]
    HorizonTooLarge { horizon: usize, limit: usize },
    #[error("instance too large for the exhaustive oracle: {0}")]
    InstanceTooLarge(String),
    #[error("uncontrollable event {event} would have to be disabled at supervisor state {state}")]
    NotControllable { state: StateId, event: EventId },
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("specification is unenforceable: the supremal controllable sublanguage is empty")]
    SpecificationUnenforceable,
    #[error("event {event} is disabled at supervisor state {state}")]
    DisabledEvent { state: StateId, event: EventId },
    #[error("event {event} is undefined at supervisor state {state}")]
    UndefinedEvent { state: StateId, event: EventId },
    #[error("probability {probability} for event {event} is outside [0, 1]")]
    InvalidProbability { event: EventId, probability: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
