use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::cmp::Reverse;

use crate::automaton::EventId;
use crate::scenario::SpecRule;

/// Picks which enabled controllable event the executor fires next.
pub trait ChoicePolicy {
    /// Called after every fired event, controllable or not.
    fn observe(&mut self, event: EventId);

    fn choose(&self, enabled: &BTreeSet<EventId>) -> Option<EventId>;
}

/// Always the lowest enabled id.
#[derive(Debug, Clone, Copy, Default)]
pub struct LowestId;

impl ChoicePolicy for LowestId {
    fn observe(&mut self, _event: EventId) {}

    fn choose(&self, enabled: &BTreeSet<EventId>) -> Option<EventId> {
        enabled.first().copied()
    }
}

/// Prefers the follower most recently unlocked by its trigger, so that the
/// delivery pipeline keeps moving instead of restarting. Followers never
/// unlocked, and ties, fall back to the lowest id.
#[derive(Debug, Clone, Default)]
pub struct PipelinePolicy {
    followers: BTreeMap<EventId, Vec<EventId>>,
    unlocked: BTreeMap<EventId, u64>,
    clock: u64,
}

impl PipelinePolicy {
    pub fn from_rules(rules: &[SpecRule]) -> Self {
        let mut followers: BTreeMap<EventId, Vec<EventId>> = BTreeMap::new();
        for rule in rules {
            followers.entry(rule.trigger).or_default().extend(&rule.followers);
        }
        PipelinePolicy {
            followers,
            ..Default::default()
        }
    }
}

impl ChoicePolicy for PipelinePolicy {
    fn observe(&mut self, event: EventId) {
        self.clock += 1;
        self.unlocked.remove(&event);
        if let Some(followers) = self.followers.get(&event) {
            for &f in followers {
                self.unlocked.insert(f, self.clock);
            }
        }
    }

    fn choose(&self, enabled: &BTreeSet<EventId>) -> Option<EventId> {
        enabled
            .iter()
            .copied()
            .max_by_key(|e| (self.unlocked.get(e).copied(), Reverse(*e)))
    }
}

pub fn choose_controllable<P: ChoicePolicy + ?Sized>(
    enabled: &BTreeSet<EventId>,
    policy: &P,
) -> Option<EventId> {
    policy.choose(enabled)
}
