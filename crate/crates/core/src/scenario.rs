//! The robot/conveyor package-delivery scenario.
//!
//! Three machines share no events: the first-task robot walks to the
//! conveyor and docks, the conveyor moves a box onto the robot, and the
//! second-task robot stands up and climbs to the delivery goal. Odd event ids
//! are controllable, even ids (failures and drops) are not.
//!
//! Each ordering requirement "after `t`, `f` must start" becomes a two-state
//! enablement automaton: followers are only allowed while the trigger is
//! pending, and the trigger cannot fire again until a follower discharges it.
//! A supervisor can only disable events, so the "must" half is left to the
//! runtime choice policy.

use alloc::vec;
use alloc::vec::Vec;

use crate::automaton::{Alphabet, Automaton, Event, EventId};
use crate::compose::{lift_to, meet, sync_all};
use crate::error::{Error, Result};
use crate::synthesis::{condat, supcon, ControlData};

pub mod ev {
    use crate::automaton::EventId;

    pub const M1_FAILED: EventId = EventId(0);
    pub const FIRST_GOAL_STARTED: EventId = EventId(1);
    pub const BOX_DROPPED: EventId = EventId(2);
    pub const FIRST_GOAL_REACHED: EventId = EventId(3);
    pub const M3_FAILED: EventId = EventId(4);
    pub const DOCKING_FINISHED: EventId = EventId(5);
    pub const STOPPING_BOX: EventId = EventId(7);
    pub const SECOND_GOAL_STARTED: EventId = EventId(9);
    pub const SECOND_GOAL_REACHED: EventId = EventId(11);
    pub const SUCCESS_FLAG: EventId = EventId(13);
    pub const SPAWN_BOX: EventId = EventId(15);
    pub const M1_ERROR_FLAG: EventId = EventId(17);
    pub const MOVING_BOX: EventId = EventId(19);
    pub const BOX_ON_ROBOT: EventId = EventId(21);
    pub const M3_ERROR_FLAG: EventId = EventId(23);
}

/// Sorted ids of every scenario event.
pub const SCENARIO_EVENTS: [u32; 15] = [0, 1, 2, 3, 4, 5, 7, 9, 11, 13, 15, 17, 19, 21, 23];

/// Index range accepted by [`build_spec`].
pub const SPEC_COUNT: usize = 8;

/// Machine-1, the first-task robot: Idle 0, Walking 1, Docking 2, Fail 3.
pub fn build_machine1() -> Automaton {
    Automaton::builder("m1")
        .states(4)
        .labeled_event(0, "Robot failed")
        .labeled_event(1, "First goal started")
        .labeled_event(3, "First goal reached")
        .labeled_event(5, "Docking finished")
        .labeled_event(17, "Error flag")
        .mark(0)
        .transition(0, 1, 1)
        .transition(1, 3, 2)
        .transition(1, 0, 3)
        .transition(2, 5, 0)
        .transition(2, 0, 3)
        .transition(3, 17, 0)
        .build()
        .expect("machine 1 is well formed")
}

/// Machine-2, the conveyor belt: Idle 0, Working 1, Fail 2.
pub fn build_machine2() -> Automaton {
    Automaton::builder("m2")
        .states(3)
        .labeled_event(2, "Box dropped")
        .labeled_event(7, "Stopping box")
        .labeled_event(15, "Spawn box")
        .labeled_event(19, "Moving box")
        .mark(0)
        .transition(0, 19, 1)
        .transition(1, 7, 0)
        .transition(1, 2, 2)
        .transition(2, 15, 0)
        .build()
        .expect("machine 2 is well formed")
}

/// Machine-3, the second-task robot: Idle 0, Walking 1, StandUp 2, Fail 3,
/// Success 4.
pub fn build_machine3() -> Automaton {
    Automaton::builder("m3")
        .states(5)
        .labeled_event(4, "Robot failed")
        .labeled_event(9, "Second goal started")
        .labeled_event(11, "Second goal reached")
        .labeled_event(13, "Success flag")
        .labeled_event(21, "Box is on the robot")
        .labeled_event(23, "Error flag")
        .mark(0)
        .transition(0, 21, 2)
        .transition(2, 9, 1)
        .transition(2, 4, 3)
        .transition(1, 11, 4)
        .transition(1, 4, 3)
        .transition(4, 13, 0)
        .transition(3, 23, 0)
        .build()
        .expect("machine 3 is well formed")
}

pub fn machines() -> Vec<Automaton> {
    vec![build_machine1(), build_machine2(), build_machine3()]
}

/// Union of the machine alphabets, with labels.
pub fn scenario_alphabet() -> Alphabet {
    machines()
        .iter()
        .try_fold(Alphabet::new(), |acc, m| acc.union(m.alphabet()))
        .expect("machine alphabets agree on controllability")
}

/// "After `trigger`, one of `followers` must start."
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecRule {
    pub name: &'static str,
    pub trigger: EventId,
    pub followers: Vec<EventId>,
}

/// How uncontrollable followers are encoded in an enablement automaton.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SpecEncoding {
    /// Every follower, controllable or not, is only allowed while the trigger
    /// is pending.
    Literal,
    /// Uncontrollable followers discharge a pending trigger but are
    /// otherwise left alone (self-loop at the idle state). Needed when two
    /// rules share an uncontrollable follower, since each would otherwise
    /// forbid it while the other is pending.
    #[default]
    Tolerant,
}

pub fn spec_rules() -> Vec<SpecRule> {
    use ev::*;
    let rule = |name, trigger, followers: &[EventId]| SpecRule {
        name,
        trigger,
        followers: followers.to_vec(),
    };
    vec![
        rule("spec1", DOCKING_FINISHED, &[MOVING_BOX]),
        rule("spec2", MOVING_BOX, &[STOPPING_BOX, BOX_DROPPED]),
        rule("spec3", STOPPING_BOX, &[BOX_ON_ROBOT]),
        rule("spec4", BOX_ON_ROBOT, &[SECOND_GOAL_STARTED, M3_FAILED]),
        rule("spec5", SECOND_GOAL_STARTED, &[SECOND_GOAL_REACHED, M3_FAILED]),
        rule("spec6", SECOND_GOAL_REACHED, &[SUCCESS_FLAG]),
        rule("spec7a", M1_FAILED, &[M1_ERROR_FLAG]),
        rule("spec7b", M3_FAILED, &[M3_ERROR_FLAG]),
        rule("spec8", BOX_DROPPED, &[SPAWN_BOX]),
    ]
}

/// Rules for requirement `index` (1-based); requirement 7 covers both
/// robots' failures and splits into one rule per robot.
fn rules_for(index: usize) -> Result<Vec<SpecRule>> {
    let rules = spec_rules();
    let range = match index {
        1..=6 => index - 1..index,
        7 => 6..8,
        8 => 8..9,
        _ => {
            return Err(Error::IndexOutOfRange {
                index,
                max: SPEC_COUNT,
            })
        }
    };
    Ok(rules[range].to_vec())
}

/// Two-state enablement automaton over the rule's own events.
pub fn enablement_automaton(rule: &SpecRule, encoding: SpecEncoding) -> Automaton {
    let alphabet = scenario_alphabet();
    let event = |id: EventId| alphabet.get(id).cloned().unwrap_or_else(|| Event::new(id));
    let mut builder = Automaton::builder(rule.name)
        .states(2)
        .mark(0)
        .event(event(rule.trigger))
        .transition(0, rule.trigger, 1);
    for &f in &rule.followers {
        let follower = event(f);
        let free = encoding == SpecEncoding::Tolerant && !follower.controllable;
        builder = builder.event(follower).transition(1, f, 0);
        if free {
            builder = builder.transition(0, f, 0);
        }
    }
    builder.build().expect("enablement automaton is well formed")
}

pub fn build_spec(index: usize) -> Result<Vec<Automaton>> {
    build_spec_with(index, SpecEncoding::default())
}

pub fn build_spec_with(index: usize, encoding: SpecEncoding) -> Result<Vec<Automaton>> {
    Ok(rules_for(index)?
        .iter()
        .map(|rule| enablement_automaton(rule, encoding))
        .collect())
}

/// Free behavior: the synchronous composition of the three machines.
pub fn build_plant() -> Automaton {
    let machines = machines();
    assert_disjoint(&machines);
    sync_all(&machines)
        .expect("machine alphabets are disjoint")
        .with_name("plant")
}

fn assert_disjoint(machines: &[Automaton]) {
    for (i, a) in machines.iter().enumerate() {
        for b in &machines[i + 1..] {
            assert!(
                a.alphabet().ids().all(|id| !b.alphabet().contains(id)),
                "machine alphabets {} and {} overlap",
                a.name(),
                b.name()
            );
        }
    }
}

/// Every specification automaton lifted to the scenario alphabet, in rule
/// order.
pub fn lifted_specs(encoding: SpecEncoding) -> Vec<Automaton> {
    let alphabet = scenario_alphabet();
    spec_rules()
        .iter()
        .map(|rule| {
            lift_to(&enablement_automaton(rule, encoding), &alphabet)
                .expect("spec events are scenario events")
        })
        .collect()
}

/// Meet of all lifted specifications.
pub fn build_composite_spec(encoding: SpecEncoding) -> Automaton {
    let lifted = lifted_specs(encoding);
    let (first, rest) = lifted.split_first().expect("at least one rule");
    rest.iter()
        .try_fold(first.clone(), |acc, s| meet(&acc, s))
        .expect("lifted specs share the scenario alphabet")
        .with_name("spec")
}

pub fn build_supervisor() -> Result<(Automaton, ControlData)> {
    build_supervisor_with(SpecEncoding::default())
}

pub fn build_supervisor_with(encoding: SpecEncoding) -> Result<(Automaton, ControlData)> {
    let plant = build_plant();
    let spec = build_composite_spec(encoding);
    let supervisor = supcon(&plant, &spec)?.with_name("supervisor");
    if supervisor.is_empty() {
        return Err(Error::SpecificationUnenforceable);
    }
    let data = condat(&plant, &supervisor)?;
    Ok((supervisor, data))
}

/// Everything the simulator needs to know about the scenario.
#[derive(Debug, Clone)]
pub struct ScenarioCatalog {
    pub machines: Vec<Automaton>,
    pub specs: Vec<Automaton>,
    pub rules: Vec<SpecRule>,
    pub full_alphabet: Alphabet,
    /// Firing this event completes a delivery.
    pub delivery_event: EventId,
}

impl ScenarioCatalog {
    pub fn new() -> Self {
        Self::with_encoding(SpecEncoding::default())
    }

    pub fn with_encoding(encoding: SpecEncoding) -> Self {
        let machines = machines();
        assert_disjoint(&machines);
        let rules = spec_rules();
        let specs = rules
            .iter()
            .map(|r| enablement_automaton(r, encoding))
            .collect();
        ScenarioCatalog {
            machines,
            specs,
            rules,
            full_alphabet: scenario_alphabet(),
            delivery_event: ev::SUCCESS_FLAG,
        }
    }

    /// Index of the machine whose alphabet holds `event`.
    pub fn machine_of(&self, event: EventId) -> Option<usize> {
        self.machines.iter().position(|m| m.alphabet().contains(event))
    }
}

impl Default for ScenarioCatalog {
    fn default() -> Self {
        Self::new()
    }
}
