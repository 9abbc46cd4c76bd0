//! DOT export for automaton visualization.

use std::fmt::Write as _;

use crate::automata::Dfao;

/// Graphviz rendering: one node per state labeled with its output, one edge
/// per digit (digits with equal targets are grouped on a single edge).
pub fn dfao_to_dot(d: &Dfao) -> String {
    let mut out = String::from("digraph dfao {\n  rankdir=LR;\n  node [shape=circle];\n");
    let _ = writeln!(out, "  start [shape=point];");
    let _ = writeln!(out, "  start -> s{};", d.initial());
    for (id, state) in d.states().iter().enumerate() {
        let _ = writeln!(out, "  s{id} [label=\"{id}: {}\"];", state.output);
        // group digits by target for readable edges
        let mut by_target: Vec<(usize, Vec<u32>)> = Vec::new();
        for (digit, &target) in state.delta.iter().enumerate() {
            match by_target.iter_mut().find(|(t, _)| *t == target) {
                Some((_, digits)) => digits.push(digit as u32),
                None => by_target.push((target, vec![digit as u32])),
            }
        }
        for (target, digits) in by_target {
            let label =
                digits.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
            let _ = writeln!(out, "  s{id} -> s{target} [label=\"{label}\"];");
        }
    }
    out.push_str("}\n");
    out
}
