#![allow(dead_code)]

use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use scdes_core::{Alphabet, Automaton, Event, EventId, Word};

/// Automaton from a dense table: `table[s][i]` is the target of `ids[i]` at `s`.
pub fn from_table(name: &str, ids: &[u32], table: &[Vec<Option<usize>>], marked: &[bool]) -> Automaton {
    let mut b = Automaton::builder(name).states(table.len());
    for &id in ids {
        b = b.event(Event::new(id));
    }
    for (s, row) in table.iter().enumerate() {
        for (i, t) in row.iter().enumerate() {
            if let Some(t) = t {
                b = b.transition(s, ids[i], *t);
            }
        }
    }
    for (s, &m) in marked.iter().enumerate() {
        if m {
            b = b.mark(s);
        }
    }
    b.build().unwrap()
}

/// Random automaton over `ids` with up to `max_states` states.
pub fn arb_automaton_over(ids: Vec<u32>, max_states: usize) -> impl Strategy<Value = Automaton> {
    (1..=max_states).prop_flat_map(move |n| {
        let ids = ids.clone();
        let row = proptest::collection::vec(proptest::option::weighted(0.45, 0..n), ids.len());
        (
            proptest::collection::vec(row, n),
            proptest::collection::vec(proptest::bool::weighted(0.4), n),
        )
            .prop_map(move |(table, marked)| from_table("g", &ids, &table, &marked))
    })
}

pub fn arb_automaton() -> impl Strategy<Value = Automaton> {
    arb_automaton_over(vec![0, 1, 2, 3], 5)
}

/// Seeded random automaton for oracle campaigns.
pub fn random_automaton(rng: &mut ChaCha8Rng, name: &str, ids: &[u32], states: usize, density: f64) -> Automaton {
    let table: Vec<Vec<Option<usize>>> = (0..states)
        .map(|_| {
            ids.iter()
                .map(|_| rng.gen_bool(density).then(|| rng.gen_range(0..states)))
                .collect()
        })
        .collect();
    let mut marked: Vec<bool> = (0..states).map(|_| rng.gen_bool(0.5)).collect();
    if !marked.iter().any(|&m| m) {
        let s = rng.gen_range(0..states);
        marked[s] = true;
    }
    from_table(name, ids, &table, &marked)
}

pub fn erase(word: &[EventId], keep: &Alphabet) -> Word {
    word.iter().copied().filter(|e| keep.contains(*e)).collect()
}

pub fn w(ids: &[u32]) -> Word {
    scdes_core::events(ids)
}

/// Seeded small supervisory-control instance within the oracle's bounds:
/// at most 8 plant states, 6 spec states, and 6 events. The plant is never
/// trim-empty.
pub fn random_instance(seed: u64) -> (Automaton, Automaton) {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut pool: Vec<u32> = (0..8).collect();
        pool.shuffle(&mut rng);
        let mut ids: Vec<u32> = pool[..rng.gen_range(2..=6)].to_vec();
        ids.sort_unstable();
        let plant_states = rng.gen_range(2..=8);
        let spec_states = rng.gen_range(1..=6);
        let plant = random_automaton(&mut rng, "plant", &ids, plant_states, 0.35);
        let spec = random_automaton(&mut rng, "spec", &ids, spec_states, 0.8);
        if !scdes_core::trim(&plant).is_empty() {
            return (plant, spec);
        }
    }
}
