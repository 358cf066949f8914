//! Self-loop lifting, meet (product), and synchronous composition.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::automaton::{Alphabet, Automaton, Event, EventId, StateId};
use crate::error::{Error, Result};
use crate::reach::trim;

/// Reachable part of a two-component product, numbered breadth-first from
/// the initial pair with events visited in ascending id.
///
/// Returns the automaton and, per product state, its component pair.
pub(crate) fn product<F>(
    name: String,
    a: &Automaton,
    b: &Automaton,
    alphabet: &Alphabet,
    step: F,
) -> (Automaton, Vec<(StateId, StateId)>)
where
    F: Fn(EventId, StateId, StateId) -> Option<(StateId, StateId)>,
{
    if a.is_empty() || b.is_empty() {
        return (Automaton::empty(name, alphabet.clone()), Vec::new());
    }
    let width = b.state_count();
    let mut index: Vec<Option<StateId>> = vec![None; a.state_count() * width];
    let mut pairs = vec![(a.initial(), b.initial())];
    index[a.initial() * width + b.initial()] = Some(0);
    let mut transitions = BTreeMap::new();
    let mut queue = VecDeque::from([0]);
    let ids: Vec<EventId> = alphabet.ids().collect();
    while let Some(src) = queue.pop_front() {
        let (pa, pb) = pairs[src];
        for &e in &ids {
            let Some((ta, tb)) = step(e, pa, pb) else {
                continue;
            };
            let slot = &mut index[ta * width + tb];
            let dst = match *slot {
                Some(d) => d,
                None => {
                    let d = pairs.len();
                    *slot = Some(d);
                    pairs.push((ta, tb));
                    queue.push_back(d);
                    d
                }
            };
            transitions.insert((src, e), dst);
        }
    }
    let marked = pairs
        .iter()
        .enumerate()
        .filter(|(_, &(pa, pb))| a.is_marked(pa) && b.is_marked(pb))
        .map(|(i, _)| i)
        .collect::<BTreeSet<_>>();
    let g = Automaton::from_parts(name, alphabet.clone(), pairs.len(), 0, marked, transitions);
    (g, pairs)
}

/// Extends the alphabet with `extra`, adding a self-loop on each new event at
/// every state.
pub fn selfloop(g: &Automaton, extra: &[Event]) -> Result<Automaton> {
    let mut alphabet = g.alphabet().clone();
    for event in extra {
        if alphabet.contains(event.id) {
            return Err(Error::AlphabetOverlap(event.id));
        }
        alphabet.insert(event.clone())?;
    }
    let mut lifted = g.clone().with_alphabet(alphabet);
    if !g.is_empty() {
        for s in 0..g.state_count() {
            for event in extra {
                lifted.add_transition_unchecked(s, event.id, s);
            }
        }
    }
    Ok(lifted)
}

/// Lifts `g` to `alphabet`, self-looping every event it does not already have.
pub fn lift_to(g: &Automaton, alphabet: &Alphabet) -> Result<Automaton> {
    let extra: Vec<Event> = alphabet
        .iter()
        .filter(|e| !g.alphabet().contains(e.id))
        .cloned()
        .collect();
    let lifted = selfloop(g, &extra)?;
    lifted.alphabet().ensure_same(alphabet)?;
    Ok(lifted)
}

/// Language intersection of two automata over the same alphabet, trimmed.
pub fn meet(a: &Automaton, b: &Automaton) -> Result<Automaton> {
    a.alphabet().ensure_same(b.alphabet())?;
    let (g, _) = product(
        format!("meet({},{})", a.name(), b.name()),
        a,
        b,
        a.alphabet(),
        |e, pa, pb| Some((a.next(pa, e)?, b.next(pb, e)?)),
    );
    Ok(trim(&g))
}

/// Synchronous composition: shared events move both components, private
/// events move their owner only. Reachable part only; not trimmed.
pub fn sync(a: &Automaton, b: &Automaton) -> Result<Automaton> {
    let alphabet = a.alphabet().union(b.alphabet())?;
    let (in_a, in_b) = (a.alphabet(), b.alphabet());
    let (g, _) = product(
        format!("sync({},{})", a.name(), b.name()),
        a,
        b,
        &alphabet,
        |e, pa, pb| match (in_a.contains(e), in_b.contains(e)) {
            (true, true) => Some((a.next(pa, e)?, b.next(pb, e)?)),
            (true, false) => Some((a.next(pa, e)?, pb)),
            (false, true) => Some((pa, b.next(pb, e)?)),
            (false, false) => None,
        },
    );
    Ok(g)
}

/// Left fold of [`sync`]. An empty list yields the neutral one-state
/// automaton over the empty alphabet.
pub fn sync_all(components: &[Automaton]) -> Result<Automaton> {
    let Some((first, rest)) = components.split_first() else {
        return Ok(Automaton::unit("sync()", Alphabet::new()));
    };
    rest.iter().try_fold(first.clone(), |acc, g| sync(&acc, g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::events;
    use crate::language::{accepts, bounded_language, Membership};

    fn two_state(name: &str, t: u32, f: u32) -> Automaton {
        Automaton::builder(name)
            .states(2)
            .event(Event::new(t))
            .event(Event::new(f))
            .transition(0, t, 1)
            .transition(1, f, 0)
            .mark(0)
            .build()
            .unwrap()
    }

    #[test]
    fn selfloop_counts() {
        let g = two_state("s", 5, 19);
        let extra: Vec<Event> = [0, 1, 2, 3, 4, 7, 9, 11, 13, 15, 17, 21, 23]
            .iter()
            .map(|&id| Event::new(id))
            .collect();
        let lifted = selfloop(&g, &extra).unwrap();
        assert_eq!(lifted.state_count(), 2);
        assert_eq!(lifted.transition_count(), 28);
        assert_eq!(lifted.alphabet().len(), 15);
        assert_eq!(selfloop(&g, &[]).unwrap(), g);
    }

    #[test]
    fn selfloop_rejects_overlap() {
        let g = two_state("s", 5, 19);
        assert_eq!(
            selfloop(&g, &[Event::new(19)]),
            Err(Error::AlphabetOverlap(EventId(19)))
        );
    }

    #[test]
    fn meet_requires_same_alphabet() {
        let a = two_state("a", 5, 19);
        let b = two_state("b", 7, 21);
        assert_eq!(
            meet(&a, &b),
            Err(Error::AlphabetMismatch(events(&[5, 7, 19, 21])))
        );
    }

    #[test]
    fn meet_of_two_orderings() {
        let s1 = two_state("s1", 5, 19);
        let s3 = two_state("s3", 7, 21);
        let all = s1.alphabet().union(s3.alphabet()).unwrap();
        let m = meet(&lift_to(&s1, &all).unwrap(), &lift_to(&s3, &all).unwrap()).unwrap();
        assert_eq!(m.state_count(), 4);
        assert_eq!(accepts(&m, &events(&[5, 7, 19, 21])).unwrap(), Membership::InLm);
        assert_eq!(accepts(&m, &events(&[19])).unwrap(), Membership::NotInL);
        assert_eq!(accepts(&m, &events(&[5, 5])).unwrap(), Membership::NotInL);
        assert_eq!(accepts(&m, &events(&[7, 5, 21])).unwrap(), Membership::InL);
    }

    #[test]
    fn sync_conflict() {
        let a = Automaton::builder("a").event(Event::new(2)).build().unwrap();
        let b = Automaton::builder("b")
            .event(Event::with_controllability(2, true))
            .build()
            .unwrap();
        assert_eq!(sync(&a, &b), Err(Error::ControllabilityConflict(EventId(2))));
    }

    #[test]
    fn sync_shared_event_moves_both() {
        // a: 0 -1-> 1 -3-> 0, b: 0 -3-> 1 -5-> 0, shared 3
        let a = two_state("a", 1, 3);
        let b = two_state("b", 3, 5);
        let s = sync(&a, &b).unwrap();
        assert_eq!(accepts(&s, &events(&[1, 3, 5])).unwrap(), Membership::InLm);
        assert_eq!(accepts(&s, &events(&[3])).unwrap(), Membership::NotInL);
        assert_eq!(s.state_count(), 4);
    }

    #[test]
    fn sync_neutral_element() {
        let g = two_state("g", 1, 3);
        let unit = Automaton::unit("u", Alphabet::new());
        let s = sync(&g, &unit).unwrap();
        assert_eq!(bounded_language(&s, 6), bounded_language(&g, 6));
        assert_eq!(sync_all(&[]).unwrap().state_count(), 1);
    }
}
