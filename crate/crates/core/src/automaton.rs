//! Deterministic finite automata with marked states over a
//! controllability-partitioned alphabet.
//!
//! States are numbered `0..state_count`. The transition function is partial
//! and stored as an ordered map from `(state, event)` to target, so iteration
//! order is always ascending by source state and then by event id.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

pub type StateId = usize;

/// Identifier of an alphabet symbol.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct EventId(pub u32);

impl EventId {
    pub const MIN: EventId = EventId(0);
    pub const MAX: EventId = EventId(u32::MAX);

    /// Controllability under the odd/even convention: odd ids are controllable.
    pub fn parity_controllable(self) -> bool {
        self.0 % 2 == 1
    }
}

impl fmt::Debug for EventId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for EventId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u32> for EventId {
    fn from(id: u32) -> Self {
        EventId(id)
    }
}

/// Converts a slice of raw ids into event ids.
pub fn events(ids: &[u32]) -> Vec<EventId> {
    ids.iter().copied().map(EventId).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Event {
    pub id: EventId,
    pub label: Option<String>,
    pub controllable: bool,
}

impl Event {
    /// Event whose controllability follows id parity.
    pub fn new(id: impl Into<EventId>) -> Self {
        let id = id.into();
        Event {
            id,
            label: None,
            controllable: id.parity_controllable(),
        }
    }

    /// Event with an explicit controllability flag, overriding parity.
    pub fn with_controllability(id: impl Into<EventId>, controllable: bool) -> Self {
        Event {
            id: id.into(),
            label: None,
            controllable,
        }
    }

    pub fn labeled(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }
}

/// A finite set of events indexed by id.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Alphabet {
    events: BTreeMap<EventId, Event>,
}

impl Alphabet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_events(events: impl IntoIterator<Item = Event>) -> Result<Self> {
        let mut alphabet = Alphabet::new();
        for event in events {
            alphabet.insert(event)?;
        }
        Ok(alphabet)
    }

    /// Alphabet over `ids` using the parity convention.
    pub fn from_parity(ids: &[u32]) -> Result<Self> {
        Self::from_events(ids.iter().map(|&id| Event::new(id)))
    }

    pub fn insert(&mut self, event: Event) -> Result<()> {
        if self.events.contains_key(&event.id) {
            return Err(Error::DuplicateEvent(event.id));
        }
        self.events.insert(event.id, event);
        Ok(())
    }

    pub fn get(&self, id: EventId) -> Option<&Event> {
        self.events.get(&id)
    }

    pub fn contains(&self, id: EventId) -> bool {
        self.events.contains_key(&id)
    }

    pub fn is_controllable(&self, id: EventId) -> Option<bool> {
        self.events.get(&id).map(|e| e.controllable)
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    /// Events in ascending id order.
    pub fn iter(&self) -> impl Iterator<Item = &Event> + '_ {
        self.events.values()
    }

    pub fn ids(&self) -> impl Iterator<Item = EventId> + '_ {
        self.events.keys().copied()
    }

    pub fn controllable(&self) -> impl Iterator<Item = EventId> + '_ {
        self.iter().filter(|e| e.controllable).map(|e| e.id)
    }

    pub fn uncontrollable(&self) -> impl Iterator<Item = EventId> + '_ {
        self.iter().filter(|e| !e.controllable).map(|e| e.id)
    }

    /// Ensures both alphabets carry the same ids with the same controllability.
    ///
    /// On failure the error lists every id in the symmetric difference and
    /// every shared id whose flags disagree, ascending.
    pub fn ensure_same(&self, other: &Alphabet) -> Result<()> {
        let mut offending = BTreeSet::new();
        for (id, event) in &self.events {
            match other.events.get(id) {
                Some(o) if o.controllable == event.controllable => {}
                _ => {
                    offending.insert(*id);
                }
            }
        }
        for id in other.events.keys() {
            if !self.events.contains_key(id) {
                offending.insert(*id);
            }
        }
        if offending.is_empty() {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch(offending.into_iter().collect()))
        }
    }

    /// Union of two alphabets; shared ids must agree on controllability.
    /// Labels of `self` win on shared ids.
    pub fn union(&self, other: &Alphabet) -> Result<Alphabet> {
        let mut events = self.events.clone();
        for (id, event) in &other.events {
            match events.get(id) {
                Some(mine) if mine.controllable != event.controllable => {
                    return Err(Error::ControllabilityConflict(*id));
                }
                Some(_) => {}
                None => {
                    events.insert(*id, event.clone());
                }
            }
        }
        Ok(Alphabet { events })
    }
}

/// A deterministic, partial-transition finite automaton.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automaton {
    name: String,
    alphabet: Alphabet,
    state_count: usize,
    initial: StateId,
    marked: BTreeSet<StateId>,
    transitions: BTreeMap<(StateId, EventId), StateId>,
    empty: bool,
}

impl Automaton {
    pub fn builder(name: impl Into<String>) -> AutomatonBuilder {
        AutomatonBuilder::new(name)
    }

    /// The canonical recognizer of the empty language over `alphabet`.
    pub fn empty(name: impl Into<String>, alphabet: Alphabet) -> Self {
        Automaton {
            name: name.into(),
            alphabet,
            state_count: 1,
            initial: 0,
            marked: BTreeSet::new(),
            transitions: BTreeMap::new(),
            empty: true,
        }
    }

    /// A one-state automaton with a marked initial state and no transitions.
    pub fn unit(name: impl Into<String>, alphabet: Alphabet) -> Self {
        let mut g = Automaton::empty(name, alphabet);
        g.empty = false;
        g.marked.insert(0);
        g
    }

    /// Builds from parts; caller guarantees validity.
    pub(crate) fn from_parts(
        name: String,
        alphabet: Alphabet,
        state_count: usize,
        initial: StateId,
        marked: BTreeSet<StateId>,
        transitions: BTreeMap<(StateId, EventId), StateId>,
    ) -> Self {
        debug_assert!(state_count > 0 && initial < state_count);
        debug_assert!(marked.iter().all(|&s| s < state_count));
        debug_assert!(transitions
            .iter()
            .all(|(&(s, e), &t)| s < state_count && t < state_count && alphabet.contains(e)));
        Automaton {
            name,
            alphabet,
            state_count,
            initial,
            marked,
            transitions,
            empty: false,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.state_count
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn marked(&self) -> &BTreeSet<StateId> {
        &self.marked
    }

    pub fn is_marked(&self, state: StateId) -> bool {
        self.marked.contains(&state)
    }

    /// True for the canonical empty-language automaton.
    pub fn is_empty(&self) -> bool {
        self.empty
    }

    pub fn transition_count(&self) -> usize {
        self.transitions.len()
    }

    /// All transitions as `(source, event, target)`, sorted by `(source, event)`.
    pub fn transitions(&self) -> impl Iterator<Item = (StateId, EventId, StateId)> + '_ {
        self.transitions.iter().map(|(&(s, e), &t)| (s, e, t))
    }

    pub fn next(&self, state: StateId, event: EventId) -> Option<StateId> {
        self.transitions.get(&(state, event)).copied()
    }

    /// Outgoing transitions of `state`, ascending by event id.
    pub fn outgoing(&self, state: StateId) -> impl Iterator<Item = (EventId, StateId)> + '_ {
        self.transitions
            .range((state, EventId::MIN)..=(state, EventId::MAX))
            .map(|(&(_, e), &t)| (e, t))
    }

    /// Follows `word` from the initial state; `None` when a step is undefined
    /// or the automaton is empty.
    pub fn run(&self, word: &[EventId]) -> Option<StateId> {
        if self.empty {
            return None;
        }
        word.iter()
            .try_fold(self.initial, |state, &e| self.next(state, e))
    }

    /// Predecessor lists indexed by target state.
    pub(crate) fn predecessors(&self) -> Vec<Vec<StateId>> {
        let mut preds = vec![Vec::new(); self.state_count];
        for (s, _, t) in self.transitions() {
            preds[t].push(s);
        }
        preds
    }

    /// Keeps only states selected by `keep` and renumbers canonically.
    ///
    /// Numbering is breadth-first from the initial state with outgoing edges
    /// visited in ascending event order. Kept states unreachable from the
    /// initial state follow, each seeding a further breadth-first sweep in
    /// ascending original id. If the initial state is dropped the result is
    /// the canonical empty automaton.
    pub(crate) fn restrict(&self, keep: &[bool], name: String) -> Automaton {
        if self.empty || !keep[self.initial] {
            return Automaton::empty(name, self.alphabet.clone());
        }
        let mut new_id: Vec<Option<StateId>> = vec![None; self.state_count];
        let mut order = Vec::new();
        let mut queue = VecDeque::new();
        let seeds = core::iter::once(self.initial).chain(0..self.state_count);
        for seed in seeds {
            if !keep[seed] || new_id[seed].is_some() {
                continue;
            }
            new_id[seed] = Some(order.len());
            order.push(seed);
            queue.push_back(seed);
            while let Some(s) = queue.pop_front() {
                for (_, t) in self.outgoing(s) {
                    if keep[t] && new_id[t].is_none() {
                        new_id[t] = Some(order.len());
                        order.push(t);
                        queue.push_back(t);
                    }
                }
            }
        }
        let marked = self
            .marked
            .iter()
            .filter_map(|&s| new_id[s])
            .collect::<BTreeSet<_>>();
        let transitions = self
            .transitions()
            .filter_map(|(s, e, t)| Some(((new_id[s]?, e), new_id[t]?)))
            .collect::<BTreeMap<_, _>>();
        Automaton::from_parts(
            name,
            self.alphabet.clone(),
            order.len(),
            0,
            marked,
            transitions,
        )
    }

    /// Replaces the alphabet with a superset; caller guarantees the superset.
    pub(crate) fn with_alphabet(mut self, alphabet: Alphabet) -> Self {
        debug_assert!(self.alphabet.ids().all(|id| alphabet.contains(id)));
        self.alphabet = alphabet;
        self
    }

    pub(crate) fn add_transition_unchecked(&mut self, s: StateId, e: EventId, t: StateId) {
        self.transitions.insert((s, e), t);
    }
}

/// Incremental, validating constructor for [`Automaton`].
#[derive(Debug, Clone)]
pub struct AutomatonBuilder {
    name: String,
    events: Vec<Event>,
    state_count: usize,
    initial: StateId,
    marked: Vec<StateId>,
    transitions: Vec<(StateId, EventId, StateId)>,
}

impl AutomatonBuilder {
    pub fn new(name: impl Into<String>) -> Self {
        AutomatonBuilder {
            name: name.into(),
            events: Vec::new(),
            state_count: 1,
            initial: 0,
            marked: Vec::new(),
            transitions: Vec::new(),
        }
    }

    pub fn states(mut self, count: usize) -> Self {
        self.state_count = count;
        self
    }

    pub fn initial(mut self, state: StateId) -> Self {
        self.initial = state;
        self
    }

    pub fn mark(mut self, state: StateId) -> Self {
        self.marked.push(state);
        self
    }

    pub fn marked(mut self, states: impl IntoIterator<Item = StateId>) -> Self {
        self.marked.extend(states);
        self
    }

    pub fn event(mut self, event: Event) -> Self {
        self.events.push(event);
        self
    }

    pub fn alphabet(mut self, alphabet: &Alphabet) -> Self {
        self.events.extend(alphabet.iter().cloned());
        self
    }

    /// Adds a parity-convention event with a label.
    pub fn labeled_event(self, id: u32, label: &str) -> Self {
        self.event(Event::new(id).labeled(label))
    }

    pub fn transition(mut self, source: StateId, event: impl Into<EventId>, target: StateId) -> Self {
        self.transitions.push((source, event.into(), target));
        self
    }

    pub fn build(self) -> Result<Automaton> {
        if self.state_count == 0 {
            return Err(Error::NoStates);
        }
        let in_range = |state: StateId| {
            if state < self.state_count {
                Ok(state)
            } else {
                Err(Error::StateOutOfRange {
                    state,
                    state_count: self.state_count,
                })
            }
        };
        let alphabet = Alphabet::from_events(self.events)?;
        let initial = in_range(self.initial)?;
        let marked = self
            .marked
            .iter()
            .map(|&s| in_range(s))
            .collect::<Result<BTreeSet<_>>>()?;
        let mut transitions = BTreeMap::new();
        for &(s, e, t) in &self.transitions {
            in_range(s)?;
            in_range(t)?;
            if !alphabet.contains(e) {
                return Err(Error::UnknownEvent(e));
            }
            if transitions.insert((s, e), t).is_some() {
                return Err(Error::DuplicateTransition { state: s, event: e });
            }
        }
        Ok(Automaton::from_parts(
            self.name,
            alphabet,
            self.state_count,
            initial,
            marked,
            transitions,
        ))
    }
}
