//! Reachability, coreachability, and trimming.

use alloc::vec;
use alloc::vec::Vec;

use crate::automaton::{Automaton, StateId};

/// States reachable from the initial state.
pub fn reachable_states(g: &Automaton) -> Vec<bool> {
    let mut seen = vec![false; g.state_count()];
    if g.is_empty() {
        return seen;
    }
    let mut stack = vec![g.initial()];
    seen[g.initial()] = true;
    while let Some(s) = stack.pop() {
        for (_, t) in g.outgoing(s) {
            if !seen[t] {
                seen[t] = true;
                stack.push(t);
            }
        }
    }
    seen
}

/// States from which some marked state is reachable.
pub fn coreachable_states(g: &Automaton) -> Vec<bool> {
    let mut seen = vec![false; g.state_count()];
    if g.is_empty() {
        return seen;
    }
    let preds = g.predecessors();
    let mut stack: Vec<StateId> = g.marked().iter().copied().collect();
    for &m in &stack {
        seen[m] = true;
    }
    while let Some(s) = stack.pop() {
        for &p in &preds[s] {
            if !seen[p] {
                seen[p] = true;
                stack.push(p);
            }
        }
    }
    seen
}

/// Restriction to the states reachable from the initial state.
pub fn accessible(g: &Automaton) -> Automaton {
    g.restrict(&reachable_states(g), g.name().into())
}

/// Restriction to the coreachable states; the empty automaton if the initial
/// state cannot reach a marked state.
pub fn coaccessible(g: &Automaton) -> Automaton {
    g.restrict(&coreachable_states(g), g.name().into())
}

pub fn trim(g: &Automaton) -> Automaton {
    let keep: Vec<bool> = reachable_states(g)
        .into_iter()
        .zip(coreachable_states(g))
        .map(|(r, c)| r && c)
        .collect();
    // same as accessible(coaccessible(g)): every state on a path into a
    // coreachable state is itself coreachable
    g.restrict(&keep, g.name().into())
}

/// Outcome of [`is_nonblocking`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Blocking {
    Nonblocking,
    /// Smallest-id reachable state that cannot reach a marked state.
    Blocking { witness: StateId },
}

impl Blocking {
    pub fn is_nonblocking(self) -> bool {
        matches!(self, Blocking::Nonblocking)
    }
}

/// Every reachable state is coreachable.
pub fn is_nonblocking(g: &Automaton) -> Blocking {
    let reach = reachable_states(g);
    let coreach = coreachable_states(g);
    match (0..g.state_count()).find(|&s| reach[s] && !coreach[s]) {
        Some(witness) => Blocking::Blocking { witness },
        None => Blocking::Nonblocking,
    }
}
