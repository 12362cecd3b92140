use std::fmt::Write;

use crate::junta::digraph::RestrictionDigraph;

/// Graphviz rendering of `G_f`; vertices `1..n` in order, edges labeled by the fixed bit.
pub fn emit_dot(g: &RestrictionDigraph) -> String {
    let mut out = String::from("digraph G_f {\n    node [shape=circle];\n");
    for v in 1..=g.num_vertices() {
        writeln!(out, "    {v};").unwrap();
    }
    for e in g.edges() {
        writeln!(out, "    {} -> {} [label=\"{}\"];", e.from, e.to, e.label).unwrap();
    }
    out.push_str("}\n");
    out
}
