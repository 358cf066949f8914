//! Controllability checking, supremal controllable sublanguage synthesis,
//! and extraction of the per-state disablement table.

mod oracle;

pub use oracle::{verify_supremal, ORACLE_MAX_CANDIDATES};

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::automaton::{Automaton, EventId, StateId};
use crate::compose::product;
use crate::error::{Error, Result};
use crate::language::Word;

/// A string `prefix` in the candidate's language after which the plant can
/// execute the uncontrollable `event` but the candidate cannot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub prefix: Word,
    pub event: EventId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ControllabilityVerdict {
    pub counterexample: Option<Counterexample>,
}

impl ControllabilityVerdict {
    pub fn is_controllable(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Walks the plant/candidate product breadth-first and reports the shortest
/// uncontrollable escape.
pub fn check_controllability(plant: &Automaton, candidate: &Automaton) -> Result<ControllabilityVerdict> {
    plant.alphabet().ensure_same(candidate.alphabet())?;
    let (walk, pairs) = product(
        format!("{}x{}", plant.name(), candidate.name()),
        plant,
        candidate,
        plant.alphabet(),
        |e, p, c| Some((plant.next(p, e)?, candidate.next(c, e)?)),
    );
    if pairs.is_empty() {
        return Ok(ControllabilityVerdict { counterexample: None });
    }
    let uncontrollable: Vec<EventId> = plant.alphabet().uncontrollable().collect();
    // product states are numbered in BFS order, so scanning ascending ids
    // finds a violation with a shortest prefix
    let parents = bfs_parents(&walk);
    for (q, &(p, c)) in pairs.iter().enumerate() {
        for &u in &uncontrollable {
            if plant.next(p, u).is_some() && candidate.next(c, u).is_none() {
                return Ok(ControllabilityVerdict {
                    counterexample: Some(Counterexample {
                        prefix: path_to(&parents, q),
                        event: u,
                    }),
                });
            }
        }
    }
    Ok(ControllabilityVerdict { counterexample: None })
}

fn bfs_parents(g: &Automaton) -> Vec<Option<(StateId, EventId)>> {
    let mut parent = vec![None; g.state_count()];
    let mut seen = vec![false; g.state_count()];
    seen[g.initial()] = true;
    let mut queue = VecDeque::from([g.initial()]);
    while let Some(s) = queue.pop_front() {
        for (e, t) in g.outgoing(s) {
            if !seen[t] {
                seen[t] = true;
                parent[t] = Some((s, e));
                queue.push_back(t);
            }
        }
    }
    parent
}

fn path_to(parents: &[Option<(StateId, EventId)>], mut state: StateId) -> Word {
    let mut word = Vec::new();
    while let Some((p, e)) = parents[state] {
        word.push(e);
        state = p;
    }
    word.reverse();
    word
}

/// Synthesizes the nonblocking, minimally restrictive supervisor for `plant`
/// under `spec`.
///
/// Returns the canonical empty automaton when the supremal controllable
/// sublanguage is empty.
pub fn supcon(plant: &Automaton, spec: &Automaton) -> Result<Automaton> {
    plant.alphabet().ensure_same(spec.alphabet())?;
    let name = format!("supcon({},{})", plant.name(), spec.name());
    let (prod, pairs) = product(
        name.clone(),
        plant,
        spec,
        plant.alphabet(),
        |e, p, s| Some((plant.next(p, e)?, spec.next(s, e)?)),
    );
    if prod.is_empty() {
        return Ok(prod);
    }
    let n = prod.state_count();
    let uncontrollable: Vec<EventId> = plant.alphabet().uncontrollable().collect();
    let preds = prod.predecessors();
    let mut good = vec![true; n];
    loop {
        let mut changed = false;
        for q in 0..n {
            if !good[q] {
                continue;
            }
            let p = pairs[q].0;
            let escapes = uncontrollable.iter().any(|&u| {
                plant.next(p, u).is_some() && !prod.next(q, u).is_some_and(|t| good[t])
            });
            if escapes {
                good[q] = false;
                changed = true;
            }
        }
        if !good[prod.initial()] {
            break;
        }
        let reach = reach_within(&prod, &good);
        let coreach = coreach_within(&prod, &preds, &good);
        for q in 0..n {
            if good[q] && !(reach[q] && coreach[q]) {
                good[q] = false;
                changed = true;
            }
        }
        if !changed || !good[prod.initial()] {
            break;
        }
    }
    Ok(prod.restrict(&good, name))
}

fn reach_within(g: &Automaton, alive: &[bool]) -> Vec<bool> {
    let mut seen = vec![false; g.state_count()];
    if !alive[g.initial()] {
        return seen;
    }
    seen[g.initial()] = true;
    let mut stack = vec![g.initial()];
    while let Some(s) = stack.pop() {
        for (_, t) in g.outgoing(s) {
            if alive[t] && !seen[t] {
                seen[t] = true;
                stack.push(t);
            }
        }
    }
    seen
}

fn coreach_within(g: &Automaton, preds: &[Vec<StateId>], alive: &[bool]) -> Vec<bool> {
    let mut seen = vec![false; g.state_count()];
    let mut stack: Vec<StateId> = g.marked().iter().copied().filter(|&m| alive[m]).collect();
    for &m in &stack {
        seen[m] = true;
    }
    while let Some(s) = stack.pop() {
        for &p in &preds[s] {
            if alive[p] && !seen[p] {
                seen[p] = true;
                stack.push(p);
            }
        }
    }
    seen
}

/// Controllable events to disable at each supervisor state. States with
/// nothing to disable have no entry.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ControlData {
    disabled: BTreeMap<StateId, BTreeSet<EventId>>,
}

impl ControlData {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a disablement; empty sets are not stored.
    pub fn disable(&mut self, state: StateId, event: EventId) {
        self.disabled.entry(state).or_default().insert(event);
    }

    pub fn disabled(&self, state: StateId) -> impl Iterator<Item = EventId> + '_ {
        self.disabled.get(&state).into_iter().flatten().copied()
    }

    pub fn is_disabled(&self, state: StateId, event: EventId) -> bool {
        self.disabled.get(&state).is_some_and(|set| set.contains(&event))
    }

    /// `(state, disabled set)` pairs for states with a nonempty set, ascending.
    pub fn entries(&self) -> impl Iterator<Item = (StateId, &BTreeSet<EventId>)> + '_ {
        self.disabled.iter().map(|(&s, set)| (s, set))
    }

    pub fn is_empty(&self) -> bool {
        self.disabled.is_empty()
    }
}

/// Derives the disablement table by pairing every supervisor state with the
/// plant states it can coexist with.
pub fn condat(plant: &Automaton, supervisor: &Automaton) -> Result<ControlData> {
    plant.alphabet().ensure_same(supervisor.alphabet())?;
    let (_, pairs) = product(
        format!("{}x{}", plant.name(), supervisor.name()),
        plant,
        supervisor,
        plant.alphabet(),
        |e, p, x| Some((plant.next(p, e)?, supervisor.next(x, e)?)),
    );
    let mut data = ControlData::new();
    for &(p, x) in &pairs {
        for (e, _) in plant.outgoing(p) {
            if supervisor.next(x, e).is_some() {
                continue;
            }
            if plant.alphabet().is_controllable(e) == Some(true) {
                data.disable(x, e);
            } else {
                return Err(Error::NotControllable { state: x, event: e });
            }
        }
    }
    Ok(data)
}
