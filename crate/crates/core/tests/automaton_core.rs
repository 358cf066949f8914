mod common;

use std::collections::BTreeSet;

use common::*;
use proptest::prelude::*;
use scdes_core::scenario::{build_machine1, build_machine2, build_machine3, build_plant, build_supervisor};
use scdes_core::*;

#[test]
fn machine1_accessible_is_renumbered_copy() {
    let m1 = build_machine1();
    let a = accessible(&m1);
    assert_eq!(a.state_count(), 4);
    assert_eq!(a.transition_count(), 6);
    // BFS from idle: walking, then the fail state (event 0) before docking (event 3)
    assert_eq!(a.next(1, EventId(0)), Some(2));
    assert_eq!(a.next(1, EventId(3)), Some(3));
    assert_eq!(bounded_language(&a, 8), bounded_language(&m1, 8));
}

#[test]
fn accessible_drops_isolated_state() {
    let g = Automaton::builder("g").states(2).build().unwrap();
    assert_eq!(accessible(&g).state_count(), 1);
}

#[test]
fn plant_fully_accessible() {
    let plant = build_plant();
    assert_eq!(accessible(&plant), plant);
}

#[test]
fn machine2_is_coaccessible() {
    let m2 = build_machine2();
    let c = coaccessible(&m2);
    assert_eq!(c.state_count(), 3);
    assert_eq!(c.transition_count(), 4);
    assert_eq!(bounded_language(&c, 8), bounded_language(&m2, 8));
}

#[test]
fn coaccessible_chain() {
    let g = Automaton::builder("chain")
        .states(3)
        .event(Event::new(1))
        .event(Event::new(3))
        .transition(0, 1, 1)
        .transition(1, 3, 2)
        .mark(1)
        .build()
        .unwrap();
    let c = coaccessible(&g);
    assert_eq!(c.state_count(), 2);
    assert_eq!(c.transitions().collect::<Vec<_>>(), vec![(0, EventId(1), 1)]);
    assert!(c.is_marked(1));

    let unmarked = Automaton::builder("u").states(2).event(Event::new(1)).transition(0, 1, 1).build().unwrap();
    assert!(coaccessible(&unmarked).is_empty());
    assert!(trim(&unmarked).is_empty());
}

#[test]
fn trim_examples() {
    let m3 = build_machine3();
    assert_eq!(trim(&trim(&m3)), trim(&m3));
    let plant = build_plant();
    let t = trim(&plant);
    assert_eq!(t, plant);
    let (a, b) = (bounded_language(&t, 8).unwrap(), bounded_language(&plant, 8).unwrap());
    assert_eq!(a.marked_strings, b.marked_strings);
}

#[test]
fn nonblocking_examples() {
    assert!(is_nonblocking(&build_machine1()).is_nonblocking());
    let g = Automaton::builder("g").states(2).event(Event::new(1)).transition(0, 1, 1).mark(0).build().unwrap();
    assert_eq!(is_nonblocking(&g), Blocking::Blocking { witness: 1 });
    let (sup, _) = build_supervisor().unwrap();
    assert!(is_nonblocking(&sup).is_nonblocking());
}

#[test]
fn machine1_horizon_two() {
    let lang = bounded_language(&build_machine1(), 2).unwrap();
    let expected: BTreeSet<Word> = [w(&[]), w(&[1]), w(&[1, 3]), w(&[1, 0])].into_iter().collect();
    assert_eq!(lang.strings, expected);
    assert_eq!(lang.marked_strings, [w(&[])].into_iter().collect());
}

#[test]
fn machine2_horizon_three() {
    let lang = bounded_language(&build_machine2(), 3).unwrap();
    let expected: BTreeSet<Word> = [w(&[]), w(&[19, 7]), w(&[19, 2, 15])].into_iter().collect();
    assert_eq!(lang.marked_strings, expected);
}

#[test]
fn machine1_membership() {
    let m1 = build_machine1();
    assert_eq!(accepts(&m1, &w(&[1, 3, 5])).unwrap(), Membership::InLm);
    assert_eq!(accepts(&m1, &[]).unwrap(), Membership::InLm);
    assert_eq!(accepts(&m1, &w(&[3])).unwrap(), Membership::NotInL);
    assert_eq!(accepts(&m1, &w(&[1, 3])).unwrap(), Membership::InL);
    assert_eq!(accepts(&m1, &w(&[19])), Err(Error::UnknownEvent(EventId(19))));
}

/// Independent nonblocking check: explicit search from each reachable state.
fn blocking_states(g: &Automaton) -> Vec<StateId> {
    if g.is_empty() {
        return Vec::new();
    }
    let succ = |s: StateId| g.transitions().filter(move |&(a, _, _)| a == s).map(|(_, _, t)| t);
    let closure = |start: StateId| {
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(s) = stack.pop() {
            for t in succ(s) {
                if seen.insert(t) {
                    stack.push(t);
                }
            }
        }
        seen
    };
    closure(g.initial())
        .into_iter()
        .filter(|&s| !closure(s).iter().any(|&t| g.is_marked(t)))
        .collect()
}

proptest! {
    #[test]
    fn bounded_language_is_prefix_closed(g in arb_automaton(), k in 0usize..=8) {
        let lang = bounded_language(&g, k).unwrap();
        prop_assert!(lang.is_prefix_closed());
        prop_assert!(lang.marked_strings.is_subset(&lang.strings));
        prop_assert!(lang.strings.iter().all(|s| s.len() <= k));
    }

    #[test]
    fn trim_preserves_marked_language(g in arb_automaton(), k in 0usize..=8) {
        let t = trim(&g);
        prop_assert_eq!(
            bounded_language(&t, k).unwrap().marked_strings,
            bounded_language(&g, k).unwrap().marked_strings
        );
        prop_assert!(is_nonblocking(&t).is_nonblocking());
        prop_assert_eq!(accessible(&t), t.clone());
    }

    #[test]
    fn accessible_and_coaccessible_idempotent_and_commute(g in arb_automaton(), k in 0usize..=8) {
        let a = accessible(&g);
        let c = coaccessible(&g);
        prop_assert_eq!(accessible(&a), a.clone());
        prop_assert_eq!(
            bounded_language(&coaccessible(&c), k).unwrap(),
            bounded_language(&c, k).unwrap()
        );
        prop_assert_eq!(
            bounded_language(&accessible(&c), k).unwrap(),
            bounded_language(&coaccessible(&a), k).unwrap()
        );
        prop_assert_eq!(bounded_language(&a, k).unwrap(), bounded_language(&g, k).unwrap());
    }

    #[test]
    fn nonblocking_matches_explicit_search(g in arb_automaton_over(vec![0, 1, 2, 3, 5], 8)) {
        let blocking = blocking_states(&g);
        match is_nonblocking(&g) {
            Blocking::Nonblocking => prop_assert!(blocking.is_empty()),
            Blocking::Blocking { witness } => prop_assert_eq!(Some(&witness), blocking.first()),
        }
    }

    #[test]
    fn accepts_agrees_with_bounded_language(
        g in arb_automaton(),
        words in proptest::collection::vec(proptest::collection::vec(0u32..4, 0..=6), 1..20),
    ) {
        let lang = bounded_language(&g, 6).unwrap();
        for word in words {
            let word: Word = word.into_iter().map(EventId).collect();
            let expected = if lang.is_marked(&word) {
                Membership::InLm
            } else if lang.contains(&word) {
                Membership::InL
            } else {
                Membership::NotInL
            };
            prop_assert_eq!(accepts(&g, &word).unwrap(), expected);
        }
    }
}
