//! Horizon-bounded enumeration of generated and marked languages.
//!
//! These are exact up to the horizon and exist so that structural operations
//! can be cross-checked against plain string sets.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::automaton::{Automaton, EventId, StateId};
use crate::error::{Error, Result};

pub const MAX_HORIZON: usize = 12;

pub type Word = Vec<EventId>;

/// All strings of length at most `horizon` generated by an automaton, and the
/// marked subset. Sets are ordered lexicographically by event id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedLanguage {
    pub horizon: usize,
    pub strings: BTreeSet<Word>,
    pub marked_strings: BTreeSet<Word>,
}

impl BoundedLanguage {
    pub fn contains(&self, word: &[EventId]) -> bool {
        self.strings.contains(word)
    }

    pub fn is_marked(&self, word: &[EventId]) -> bool {
        self.marked_strings.contains(word)
    }

    pub fn is_prefix_closed(&self) -> bool {
        self.strings
            .iter()
            .all(|w| w.is_empty() || self.strings.contains(&w[..w.len() - 1]))
    }
}

pub fn bounded_language(g: &Automaton, horizon: usize) -> Result<BoundedLanguage> {
    if horizon > MAX_HORIZON {
        return Err(Error::HorizonTooLarge {
            horizon,
            limit: MAX_HORIZON,
        });
    }
    let mut strings = BTreeSet::new();
    let mut marked_strings = BTreeSet::new();
    if !g.is_empty() {
        let mut word = Vec::new();
        walk(g, g.initial(), horizon, &mut word, &mut strings, &mut marked_strings);
    }
    Ok(BoundedLanguage {
        horizon,
        strings,
        marked_strings,
    })
}

fn walk(
    g: &Automaton,
    state: StateId,
    budget: usize,
    word: &mut Word,
    strings: &mut BTreeSet<Word>,
    marked: &mut BTreeSet<Word>,
) {
    strings.insert(word.clone());
    if g.is_marked(state) {
        marked.insert(word.clone());
    }
    if budget == 0 {
        return;
    }
    for (e, t) in g.outgoing(state) {
        word.push(e);
        walk(g, t, budget - 1, word, strings, marked);
        word.pop();
    }
}

/// Membership of a single string.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    NotInL,
    InL,
    InLm,
}

pub fn accepts(g: &Automaton, word: &[EventId]) -> Result<Membership> {
    if let Some(&e) = word.iter().find(|&&e| !g.alphabet().contains(e)) {
        return Err(Error::UnknownEvent(e));
    }
    Ok(match g.run(word) {
        None => Membership::NotInL,
        Some(s) if g.is_marked(s) => Membership::InLm,
        Some(_) => Membership::InL,
    })
}
