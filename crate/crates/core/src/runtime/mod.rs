//! Executes a synthesized supervisor as a control policy over the delivery
//! scenario, one event at a time.

mod policy;
mod sim;

pub use policy::{choose_controllable, ChoicePolicy, LowestId, PipelinePolicy};
pub use sim::{simulate, FailureProfile, SimulationOutcome, StopReason, Summary, DEFAULT_MAX_STEPS};

use alloc::string::String;
use alloc::vec::Vec;

use crate::automaton::{Automaton, EventId, StateId};
use crate::error::{Error, Result};
use crate::synthesis::ControlData;

/// A supervisor together with its disablement table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ControlledSupervisor {
    pub automaton: Automaton,
    pub control: ControlData,
}

impl ControlledSupervisor {
    pub fn new(automaton: Automaton, control: ControlData) -> Self {
        ControlledSupervisor { automaton, control }
    }

    pub fn initial(&self) -> StateId {
        self.automaton.initial()
    }

    /// Fires `event` at supervisor state `state`.
    pub fn step(&self, state: StateId, event: EventId) -> Result<StateId> {
        if self.control.is_disabled(state, event) {
            return Err(Error::DisabledEvent { state, event });
        }
        self.automaton
            .next(state, event)
            .ok_or(Error::UndefinedEvent { state, event })
    }

    /// Supervisor states visited by `events`, starting with the initial state.
    pub fn replay(&self, events: &[EventId]) -> Result<Vec<StateId>> {
        let mut states = Vec::with_capacity(events.len() + 1);
        let mut state = self.initial();
        states.push(state);
        for &e in events {
            state = self.step(state, e)?;
            states.push(state);
        }
        Ok(states)
    }
}

/// Joint configuration of the three scenario machines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScenarioState {
    pub machines: [StateId; 3],
    pub package_delivered: bool,
    pub step_count: usize,
}

impl ScenarioState {
    pub fn m1(&self) -> StateId {
        self.machines[0]
    }

    pub fn m2(&self) -> StateId {
        self.machines[1]
    }

    pub fn m3(&self) -> StateId {
        self.machines[2]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceRecord {
    pub step: usize,
    pub event: EventId,
    pub label: String,
    pub controllable: bool,
    pub supervisor_before: StateId,
    pub supervisor_after: StateId,
    pub state: ScenarioState,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EventTrace {
    pub records: Vec<TraceRecord>,
}

impl EventTrace {
    pub fn events(&self) -> Vec<EventId> {
        self.records.iter().map(|r| r.event).collect()
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Replaying the events reproduces the recorded supervisor states.
    pub fn is_consistent_with(&self, supervisor: &ControlledSupervisor) -> bool {
        let Ok(states) = supervisor.replay(&self.events()) else {
            return false;
        };
        self.records.iter().zip(states.windows(2)).all(|(r, w)| {
            r.supervisor_before == w[0] && r.supervisor_after == w[1]
        })
    }
}
