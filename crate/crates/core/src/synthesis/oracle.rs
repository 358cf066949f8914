//! Exhaustive cross-check for [`supcon`](super::supcon) on small instances.
//!
//! Every sublanguage the supervisor could realize is a sub-automaton of the
//! plant/spec product. The oracle enumerates all subsets of product states,
//! keeps those whose reachable part is controllable and nonblocking, and
//! takes their union. Its bounded language must equal the result's.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use crate::automaton::{Automaton, EventId, StateId};
use crate::error::{Error, Result};
use crate::language::{bounded_language, Word};

pub const ORACLE_MAX_PLANT_STATES: usize = 8;
pub const ORACLE_MAX_SPEC_STATES: usize = 6;
pub const ORACLE_MAX_EVENTS: usize = 6;
pub const ORACLE_MAX_HORIZON: usize = 8;
/// Product states left after discarding those that can never be kept.
pub const ORACLE_MAX_CANDIDATES: usize = 20;

struct Product {
    pairs: Vec<(StateId, StateId)>,
    // (event, target) per state
    edges: Vec<Vec<(EventId, StateId)>>,
    marked: Vec<bool>,
    // plant enables some uncontrollable event the product lacks
    escapes: Vec<bool>,
}

fn explore(plant: &Automaton, spec: &Automaton) -> Product {
    let uncontrollable: Vec<EventId> = plant.alphabet().uncontrollable().collect();
    let ids: Vec<EventId> = plant.alphabet().ids().collect();
    let mut pairs = Vec::new();
    let mut edges = Vec::new();
    if plant.is_empty() || spec.is_empty() {
        return Product { pairs, edges, marked: Vec::new(), escapes: Vec::new() };
    }
    pairs.push((plant.initial(), spec.initial()));
    let mut i = 0;
    while i < pairs.len() {
        let (p, s) = pairs[i];
        let mut out = Vec::new();
        for &e in &ids {
            if let (Some(tp), Some(ts)) = (plant.next(p, e), spec.next(s, e)) {
                let t = match pairs.iter().position(|&x| x == (tp, ts)) {
                    Some(t) => t,
                    None => {
                        pairs.push((tp, ts));
                        pairs.len() - 1
                    }
                };
                out.push((e, t));
            }
        }
        edges.push(out);
        i += 1;
    }
    let marked = pairs
        .iter()
        .map(|&(p, s)| plant.is_marked(p) && spec.is_marked(s))
        .collect();
    let escapes = pairs
        .iter()
        .enumerate()
        .map(|(q, &(p, _))| {
            uncontrollable.iter().any(|&u| {
                plant.next(p, u).is_some() && !edges[q].iter().any(|&(e, _)| e == u)
            })
        })
        .collect();
    Product { pairs, edges, marked, escapes }
}

/// Confirms that `result` has the bounded language (up to `horizon`) of the
/// supremal controllable, nonblocking sublanguage of plant under spec.
pub fn verify_supremal(
    plant: &Automaton,
    spec: &Automaton,
    result: &Automaton,
    horizon: usize,
) -> Result<bool> {
    if plant.state_count() > ORACLE_MAX_PLANT_STATES
        || spec.state_count() > ORACLE_MAX_SPEC_STATES
        || plant.alphabet().len() > ORACLE_MAX_EVENTS
        || horizon > ORACLE_MAX_HORIZON
    {
        return Err(Error::InstanceTooLarge(format!(
            "plant {} states, spec {} states, {} events, horizon {}",
            plant.state_count(),
            spec.state_count(),
            plant.alphabet().len(),
            horizon
        )));
    }
    plant.alphabet().ensure_same(spec.alphabet())?;
    plant.alphabet().ensure_same(result.alphabet())?;

    let product = explore(plant, spec);
    let n = product.pairs.len();
    let coreach = coreachable(&product);
    // a kept state can neither escape nor be unable to reach a mark
    let candidates: Vec<StateId> = (0..n).filter(|&q| !product.escapes[q] && coreach[q]).collect();
    if candidates.len() > ORACLE_MAX_CANDIDATES {
        return Err(Error::InstanceTooLarge(format!(
            "{} candidate product states",
            candidates.len()
        )));
    }
    let bit = |q: StateId| candidates.iter().position(|&c| c == q).map(|i| 1u32 << i);

    let supremal: BTreeSet<StateId> = match candidates.first() {
        Some(0) => {
            let succ: Vec<u32> = candidates
                .iter()
                .map(|&q| product.edges[q].iter().filter_map(|&(_, t)| bit(t)).fold(0, |m, b| m | b))
                .collect();
            let uncontrollable: Vec<EventId> = plant.alphabet().uncontrollable().collect();
            // None when some required uncontrollable successor is not a candidate
            let required: Vec<Option<u32>> = candidates
                .iter()
                .map(|&q| {
                    let p = product.pairs[q].0;
                    let mut mask = 0;
                    for &(e, t) in &product.edges[q] {
                        if uncontrollable.contains(&e) && plant.next(p, e).is_some() {
                            mask |= bit(t)?;
                        }
                    }
                    Some(mask)
                })
                .collect();
            let marked: u32 = candidates
                .iter()
                .enumerate()
                .filter(|&(_, &q)| product.marked[q])
                .fold(0, |m, (i, _)| m | (1 << i));

            let mut union = 0u32;
            let k = candidates.len();
            for rest in 0..(1u32 << (k - 1)) {
                let subset = (rest << 1) | 1;
                if let Some(kept) = admissible(subset, &succ, &required, marked) {
                    union |= kept;
                }
            }
            if union != 0 && admissible(union, &succ, &required, marked) != Some(union) {
                return Ok(false);
            }
            (0..k).filter(|&i| union & (1 << i) != 0).map(|i| candidates[i]).collect()
        }
        _ => BTreeSet::new(),
    };

    let expected = enumerate(&product, &supremal, horizon);
    let actual = bounded_language(result, horizon)?;
    Ok(expected.0 == actual.strings && expected.1 == actual.marked_strings)
}

fn coreachable(product: &Product) -> Vec<bool> {
    let n = product.pairs.len();
    let mut seen = product.marked.clone();
    let mut changed = true;
    while changed {
        changed = false;
        for q in 0..n {
            if !seen[q] && product.edges[q].iter().any(|&(_, t)| seen[t]) {
                seen[q] = true;
                changed = true;
            }
        }
    }
    seen
}

/// Reachable part of `subset` (bit 0 is the initial state), if it is
/// controllable and nonblocking.
fn admissible(subset: u32, succ: &[u32], required: &[Option<u32>], marked: u32) -> Option<u32> {
    let mut reach = 1u32;
    let mut frontier = 1u32;
    while frontier != 0 {
        let mut next = 0;
        for (i, &s) in succ.iter().enumerate() {
            if frontier & (1 << i) != 0 {
                next |= s & subset;
            }
        }
        frontier = next & !reach;
        reach |= next;
    }
    for (i, req) in required.iter().enumerate() {
        if reach & (1 << i) != 0 {
            match req {
                Some(mask) if mask & !reach == 0 => {}
                _ => return None,
            }
        }
    }
    let mut coreach = marked & reach;
    loop {
        let mut grown = coreach;
        for (i, &s) in succ.iter().enumerate() {
            if reach & (1 << i) != 0 && s & coreach != 0 {
                grown |= 1 << i;
            }
        }
        if grown == coreach {
            break;
        }
        coreach = grown;
    }
    (coreach == reach).then_some(reach)
}

fn enumerate(
    product: &Product,
    keep: &BTreeSet<StateId>,
    horizon: usize,
) -> (BTreeSet<Word>, BTreeSet<Word>) {
    let mut strings = BTreeSet::new();
    let mut marked = BTreeSet::new();
    if !keep.contains(&0) {
        return (strings, marked);
    }
    let mut layer: Vec<(Word, StateId)> = alloc::vec![(Word::new(), 0)];
    for depth in 0..=horizon {
        let mut next = Vec::new();
        for (word, q) in layer {
            if product.marked[q] {
                marked.insert(word.clone());
            }
            if depth < horizon {
                for &(e, t) in &product.edges[q] {
                    if keep.contains(&t) {
                        let mut w = word.clone();
                        w.push(e);
                        next.push((w, t));
                    }
                }
            }
            strings.insert(word);
        }
        layer = next;
    }
    (strings, marked)
}
