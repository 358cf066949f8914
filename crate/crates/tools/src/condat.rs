//! The `.condat` format: controllable events to disable at each supervisor
//! state.
//!
//! ```text
//! condat <name>
//! states <N>
//! disable <state> <event...>
//! ```
//!
//! States with nothing to disable are omitted. [`serialize_condat`] writes
//! states and events in ascending order.

use std::fmt::Write;

use scdes_core::{ControlData, EventId};

use crate::error::FormatError;
use crate::text::{content_lines, number, split_keyword};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CondatDocument {
    pub name: String,
    /// State count of the supervisor the table belongs to.
    pub states: usize,
    pub data: ControlData,
}

pub fn serialize_condat(doc: &CondatDocument) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "condat {}", doc.name);
    let _ = writeln!(out, "states {}", doc.states);
    for (state, events) in doc.data.entries() {
        let _ = write!(out, "disable {state}");
        for e in events {
            let _ = write!(out, " {e}");
        }
        out.push('\n');
    }
    out
}

pub fn parse_condat(text: &str) -> Result<CondatDocument, FormatError> {
    let mut lines = content_lines(text);
    let (line, header) = lines
        .next()
        .ok_or_else(|| FormatError::syntax(1, "missing `condat` header"))?;
    let name = match split_keyword(header) {
        ("condat", name) if !name.is_empty() => name.to_string(),
        _ => return Err(FormatError::syntax(line, "expected `condat <name>`")),
    };
    let mut states = None;
    let mut data = ControlData::new();
    let mut listed = Vec::new();
    for (line, content) in lines {
        let (keyword, rest) = split_keyword(content);
        let args: Vec<&str> = rest.split_whitespace().collect();
        match keyword {
            "states" => {
                let [n] = args[..] else {
                    return Err(FormatError::syntax(line, "`states` takes one number"));
                };
                if states.is_some() {
                    return Err(FormatError::syntax(line, "repeated `states`"));
                }
                states = Some(number::<usize>(line, n, "a number")?);
            }
            "disable" => {
                let Some((s, events)) = args.split_first() else {
                    return Err(FormatError::syntax(line, "`disable` needs a state"));
                };
                if events.is_empty() {
                    return Err(FormatError::syntax(line, "`disable` needs at least one event"));
                }
                let s: usize = number(line, s, "a state id")?;
                for e in events {
                    data.disable(s, EventId(number(line, e, "an event id")?));
                }
                listed.push((line, s));
            }
            other => return Err(FormatError::syntax(line, format!("unknown directive `{other}`"))),
        }
    }
    let states = states.ok_or_else(|| FormatError::syntax(text.lines().count().max(1), "missing `states`"))?;
    if let Some(&(line, value)) = listed.iter().find(|&&(_, s)| s >= states) {
        return Err(FormatError::IdOutOfRange { line, value, states });
    }
    Ok(CondatDocument { name, states, data })
}
