//! Supervisory control of discrete-event systems.
//!
//! Plants and specifications are deterministic automata over an alphabet
//! split into controllable and uncontrollable events. The crate composes
//! them, synthesizes the nonblocking, minimally restrictive supervisor, and
//! runs that supervisor against a simulated robot/conveyor delivery
//! scenario.
//!
//! The crate is `no_std` and needs only `alloc`. File formats and the
//! command-line driver live in the `scdes` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod automaton;
pub mod compose;
pub mod error;
pub mod language;
pub mod reach;
pub mod runtime;
pub mod scenario;
pub mod synthesis;

pub use automaton::{events, Alphabet, Automaton, AutomatonBuilder, Event, EventId, StateId};
pub use compose::{lift_to, meet, selfloop, sync, sync_all};
pub use error::{Error, Result};
pub use language::{accepts, bounded_language, BoundedLanguage, Membership, Word, MAX_HORIZON};
pub use reach::{accessible, coaccessible, is_nonblocking, trim, Blocking};
pub use synthesis::{
    check_controllability, condat, supcon, verify_supremal, ControlData, ControllabilityVerdict,
    Counterexample,
};
