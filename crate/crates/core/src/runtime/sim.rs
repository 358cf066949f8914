use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::policy::{ChoicePolicy, PipelinePolicy};
use super::{ControlledSupervisor, EventTrace, ScenarioState, TraceRecord};
use crate::automaton::EventId;
use crate::error::{Error, Result};
use crate::scenario::ScenarioCatalog;

pub const DEFAULT_MAX_STEPS: usize = 500;

/// Per-step firing probabilities for uncontrollable events, plus the seed.
///
/// An event absent from the map never fires on its own. `max_injections`
/// caps how many times each event may be injected in one run.
#[derive(Debug, Clone, PartialEq)]
pub struct FailureProfile {
    probabilities: BTreeMap<EventId, f64>,
    pub seed: u64,
    pub max_injections: Option<u32>,
}

impl FailureProfile {
    pub fn new(seed: u64) -> Self {
        FailureProfile {
            probabilities: BTreeMap::new(),
            seed,
            max_injections: None,
        }
    }

    /// The same probability for every uncontrollable scenario event.
    pub fn uniform(seed: u64, probability: f64) -> Result<Self> {
        let catalog_events = [EventId(0), EventId(2), EventId(4)];
        catalog_events
            .into_iter()
            .try_fold(Self::new(seed), |p, e| p.with(e, probability))
    }

    pub fn with(mut self, event: EventId, probability: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&probability) {
            return Err(Error::InvalidProbability { event, probability });
        }
        self.probabilities.insert(event, probability);
        Ok(self)
    }

    pub fn with_max_injections(mut self, limit: u32) -> Self {
        self.max_injections = Some(limit);
        self
    }

    pub fn probability(&self, event: EventId) -> f64 {
        self.probabilities.get(&event).copied().unwrap_or(0.0)
    }

    pub fn probabilities(&self) -> impl Iterator<Item = (EventId, f64)> + '_ {
        self.probabilities.iter().map(|(&e, &p)| (e, p))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    Delivered,
    StepLimit,
    /// Nothing could fire: no uncontrollable event was sampled and no
    /// controllable event was enabled.
    Blocked,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Summary {
    pub delivered: bool,
    pub blocked: bool,
    pub steps: usize,
    pub failures: usize,
    /// Injected failures after which the failed machine got back to its
    /// initial state.
    pub failures_recovered: usize,
    pub stop: StopReason,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationOutcome {
    pub trace: EventTrace,
    pub summary: Summary,
}

/// Runs the scenario under `supervisor` until delivery, `max_steps`, or a
/// blocked configuration.
///
/// Each step first samples the uncontrollable events the plant enables, in
/// ascending id, firing the first that succeeds; otherwise the pipeline
/// policy picks among the enabled controllable events.
pub fn simulate(
    catalog: &ScenarioCatalog,
    supervisor: &ControlledSupervisor,
    profile: &FailureProfile,
    max_steps: usize,
) -> Result<SimulationOutcome> {
    if max_steps == 0 {
        return Err(Error::InvalidArgument("max_steps must be at least 1".into()));
    }
    if catalog.machines.len() != 3 {
        return Err(Error::InvalidArgument(format!(
            "scenario needs 3 machines, got {}",
            catalog.machines.len()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(profile.seed);
    let mut policy = PipelinePolicy::from_rules(&catalog.rules);
    let mut state = ScenarioState {
        machines: [
            catalog.machines[0].initial(),
            catalog.machines[1].initial(),
            catalog.machines[2].initial(),
        ],
        package_delivered: false,
        step_count: 0,
    };
    let mut sup_state = supervisor.initial();
    let mut injected: BTreeMap<EventId, u32> = BTreeMap::new();
    let mut trace = EventTrace::default();
    let mut stop = StopReason::StepLimit;

    while state.step_count < max_steps {
        let enabled: BTreeSet<EventId> = catalog
            .machines
            .iter()
            .zip(state.machines)
            .flat_map(|(m, s)| m.outgoing(s).map(|(e, _)| e))
            .collect();

        let mut fired = None;
        for &u in &enabled {
            if catalog.full_alphabet.is_controllable(u) != Some(false) {
                continue;
            }
            let p = profile.probability(u);
            let exhausted = profile
                .max_injections
                .is_some_and(|cap| injected.get(&u).copied().unwrap_or(0) >= cap);
            if p > 0.0 && !exhausted && rng.gen_bool(p) {
                *injected.entry(u).or_default() += 1;
                fired = Some(u);
                break;
            }
        }
        if fired.is_none() {
            let allowed: BTreeSet<EventId> = enabled
                .iter()
                .copied()
                .filter(|&e| catalog.full_alphabet.is_controllable(e) == Some(true))
                .filter(|&e| !supervisor.control.is_disabled(sup_state, e))
                .collect();
            fired = policy.choose(&allowed);
        }
        let Some(event) = fired else {
            stop = StopReason::Blocked;
            break;
        };

        let next = supervisor.step(sup_state, event)?;
        let machine = catalog
            .machine_of(event)
            .ok_or(Error::UnknownEvent(event))?;
        state.machines[machine] = catalog.machines[machine]
            .next(state.machines[machine], event)
            .ok_or(Error::UndefinedEvent {
                state: state.machines[machine],
                event,
            })?;
        let record_step = state.step_count;
        state.step_count += 1;
        if event == catalog.delivery_event {
            state.package_delivered = true;
        }
        policy.observe(event);
        let meta = catalog.full_alphabet.get(event);
        trace.records.push(TraceRecord {
            step: record_step,
            event,
            label: meta.and_then(|e| e.label.clone()).unwrap_or_default(),
            controllable: meta.is_some_and(|e| e.controllable),
            supervisor_before: sup_state,
            supervisor_after: next,
            state,
        });
        sup_state = next;
        if state.package_delivered {
            stop = StopReason::Delivered;
            break;
        }
    }

    let (failures, failures_recovered) = count_recoveries(catalog, &trace);
    Ok(SimulationOutcome {
        summary: Summary {
            delivered: state.package_delivered,
            blocked: stop == StopReason::Blocked,
            steps: state.step_count,
            failures,
            failures_recovered,
            stop,
        },
        trace,
    })
}

fn count_recoveries(catalog: &ScenarioCatalog, trace: &EventTrace) -> (usize, usize) {
    let mut failures = 0;
    let mut recovered = 0;
    for (i, record) in trace.records.iter().enumerate() {
        if record.controllable {
            continue;
        }
        failures += 1;
        let Some(m) = catalog.machine_of(record.event) else {
            continue;
        };
        let home = catalog.machines[m].initial();
        if trace.records[i + 1..].iter().any(|r| {
            catalog.machine_of(r.event) == Some(m) && r.state.machines[m] == home
        }) {
            recovered += 1;
        }
    }
    (failures, recovered)
}
