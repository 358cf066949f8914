//! Graphviz export. Marked states are double circles, the initial state gets
//! an arrow from an invisible point, controllable edges are red and
//! uncontrollable ones green. Edge labels read `id:label`, or just `id`.

use std::fmt::Write;

use scdes_core::Automaton;

use crate::text::quote;

pub const CONTROLLABLE_COLOR: &str = "red";
pub const UNCONTROLLABLE_COLOR: &str = "green";

pub fn to_dot(g: &Automaton) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph {} {{", quote(g.name()));
    if g.is_empty() {
        out.push_str("  empty [shape=plaintext, label=\"(empty)\"];\n}\n");
        return out;
    }
    out.push_str("  rankdir=LR;\n  node [shape=circle];\n");
    out.push_str("  init [shape=point, style=invis];\n");
    let _ = writeln!(out, "  init -> {};", g.initial());
    for m in g.marked() {
        let _ = writeln!(out, "  {m} [shape=doublecircle];");
    }
    for s in 0..g.state_count() {
        if !g.is_marked(s) {
            let _ = writeln!(out, "  {s};");
        }
    }
    for (s, e, t) in g.transitions() {
        let meta = g.alphabet().get(e);
        let label = match meta.and_then(|m| m.label.as_deref()) {
            Some(l) => format!("{e}:{l}"),
            None => e.to_string(),
        };
        let color = if meta.is_some_and(|m| m.controllable) {
            CONTROLLABLE_COLOR
        } else {
            UNCONTROLLABLE_COLOR
        };
        let _ = writeln!(
            out,
            "  {s} -> {t} [label={}, color={color}, fontcolor={color}];",
            quote(&label)
        );
    }
    out.push_str("}\n");
    out
}
