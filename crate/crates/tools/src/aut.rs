//! The `.aut` text format.
//!
//! ```text
//! automaton <name>
//! states <N>
//! initial <id>
//! marked <id...>
//! empty                        # optional; the flagged empty automaton
//! event <id> [c|u] ["label"]   # flag defaults to odd = controllable
//! trans <src> <event> <dst>
//! ```
//!
//! `#` starts a comment and blank lines are ignored. The header comes first;
//! `states`, `initial` and `marked` must each appear exactly once. Output of
//! [`serialize`] lists events by ascending id and transitions by
//! `(src, event)`, always writes the controllability flag, and ends with a
//! newline.

use std::collections::BTreeSet;
use std::fmt::Write;

use scdes_core::{Alphabet, Automaton, Event, EventId};

use crate::error::FormatError;
use crate::text::{content_lines, number, quote, split_keyword, unquote};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ParseOptions {
    /// Declare events that only appear on `trans` lines, with parity
    /// controllability and no label.
    pub implicit_events: bool,
}

pub fn parse(text: &str) -> Result<Automaton, FormatError> {
    parse_with(text, ParseOptions::default())
}

pub fn parse_with(text: &str, options: ParseOptions) -> Result<Automaton, FormatError> {
    let mut lines = content_lines(text);
    let (header_line, header) = lines
        .next()
        .ok_or_else(|| FormatError::syntax(1, "missing `automaton` header"))?;
    let name = match split_keyword(header) {
        ("automaton", name) if !name.is_empty() => name.to_string(),
        _ => return Err(FormatError::syntax(header_line, "expected `automaton <name>`")),
    };

    let mut states: Option<(usize, usize)> = None;
    let mut initial: Option<(usize, usize)> = None;
    let mut marked: Option<(usize, Vec<usize>)> = None;
    let mut empty = None;
    let mut alphabet = Alphabet::new();
    let mut trans: Vec<(usize, usize, u32, usize)> = Vec::new();

    for (line, content) in lines {
        let (keyword, rest) = split_keyword(content);
        let args: Vec<&str> = rest.split_whitespace().collect();
        match keyword {
            "states" | "initial" => {
                let [n] = args[..] else {
                    return Err(FormatError::syntax(line, format!("`{keyword}` takes one number")));
                };
                let slot = if keyword == "states" { &mut states } else { &mut initial };
                if slot.is_some() {
                    return Err(FormatError::syntax(line, format!("repeated `{keyword}`")));
                }
                *slot = Some((line, number(line, n, "a number")?));
            }
            "marked" => {
                if marked.is_some() {
                    return Err(FormatError::syntax(line, "repeated `marked`"));
                }
                let ids = args
                    .iter()
                    .map(|a| number(line, a, "a state id"))
                    .collect::<Result<_, _>>()?;
                marked = Some((line, ids));
            }
            "empty" => {
                if !args.is_empty() || empty.is_some() {
                    return Err(FormatError::syntax(line, "`empty` takes no arguments and appears once"));
                }
                empty = Some(line);
            }
            "event" => {
                let event = parse_event(line, rest)?;
                let id = event.id.0;
                alphabet
                    .insert(event)
                    .map_err(|_| FormatError::DuplicateEvent { line, event: id })?;
            }
            "trans" => {
                let [s, e, t] = args[..] else {
                    return Err(FormatError::syntax(line, "`trans` takes <src> <event> <dst>"));
                };
                trans.push((
                    line,
                    number(line, s, "a state id")?,
                    number(line, e, "an event id")?,
                    number(line, t, "a state id")?,
                ));
            }
            other => return Err(FormatError::syntax(line, format!("unknown directive `{other}`"))),
        }
    }

    let last = text.lines().count().max(1);
    let (states_line, n) = states.ok_or_else(|| FormatError::syntax(last, "missing `states`"))?;
    let (initial_line, init) = initial.ok_or_else(|| FormatError::syntax(last, "missing `initial`"))?;
    let (marked_line, marks) = marked.ok_or_else(|| FormatError::syntax(last, "missing `marked`"))?;
    if n == 0 {
        return Err(FormatError::syntax(states_line, "an automaton needs at least one state"));
    }
    let in_range = |line: usize, value: usize| {
        if value < n {
            Ok(value)
        } else {
            Err(FormatError::IdOutOfRange { line, value, states: n })
        }
    };
    in_range(initial_line, init)?;
    for &m in &marks {
        in_range(marked_line, m)?;
    }

    let mut seen = BTreeSet::new();
    for &(line, s, e, t) in &trans {
        in_range(line, s)?;
        in_range(line, t)?;
        if !alphabet.contains(EventId(e)) {
            if !options.implicit_events {
                return Err(FormatError::UnknownEventInTrans { line, event: e });
            }
            alphabet.insert(Event::new(e))?;
        }
        if !seen.insert((s, e)) {
            return Err(FormatError::DuplicateTransition { line, state: s, event: e });
        }
    }

    if let Some(line) = empty {
        if n != 1 || init != 0 || !marks.is_empty() || !trans.is_empty() {
            return Err(FormatError::syntax(
                line,
                "an `empty` automaton has one state, initial 0, no marks and no transitions",
            ));
        }
        return Ok(Automaton::empty(name, alphabet));
    }

    let mut builder = Automaton::builder(name)
        .states(n)
        .initial(init)
        .marked(marks)
        .alphabet(&alphabet);
    for (_, s, e, t) in trans {
        builder = builder.transition(s, e, t);
    }
    Ok(builder.build()?)
}

fn parse_event(line: usize, rest: &str) -> Result<Event, FormatError> {
    let (id, rest) = split_keyword(rest);
    if id.is_empty() {
        return Err(FormatError::syntax(line, "`event` needs an id"));
    }
    let id: u32 = number(line, id, "an event id")?;
    let (flag, rest) = match split_keyword(rest) {
        ("c", rest) => (Some(true), rest),
        ("u", rest) => (Some(false), rest),
        _ => (None, rest),
    };
    let mut event = match flag {
        Some(c) => Event::with_controllability(id, c),
        None => Event::new(id),
    };
    if !rest.is_empty() {
        let (label, tail) = unquote(line, rest)?;
        if !tail.trim().is_empty() {
            return Err(FormatError::syntax(line, "trailing text after label"));
        }
        event = event.labeled(label);
    }
    Ok(event)
}

pub fn serialize(g: &Automaton) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "automaton {}", g.name());
    let _ = writeln!(out, "states {}", g.state_count());
    let _ = writeln!(out, "initial {}", g.initial());
    out.push_str("marked");
    for m in g.marked() {
        let _ = write!(out, " {m}");
    }
    out.push('\n');
    if g.is_empty() {
        out.push_str("empty\n");
    }
    for e in g.alphabet().iter() {
        let _ = write!(out, "event {} {}", e.id, if e.controllable { 'c' } else { 'u' });
        if let Some(label) = &e.label {
            let _ = write!(out, " {}", quote(label));
        }
        out.push('\n');
    }
    for (s, e, t) in g.transitions() {
        let _ = writeln!(out, "trans {s} {e} {t}");
    }
    out
}
