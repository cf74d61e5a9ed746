//! Graphviz export.

use std::fmt::Write;

use crate::auxiliary::{AuxGraph, Colour};
use crate::graph::{Graph, TwoFactor};

/// The auxiliary graph with vertices `e1..en` on a circle and red/blue
/// edges. A double edge is drawn twice.
pub fn aux_to_dot(aux: &AuxGraph) -> String {
    let mut s = String::from("graph aux {\n  layout=circo;\n  node [shape=circle];\n");
    for v in 0..aux.n() {
        writeln!(s, "  e{};", v + 1).unwrap();
    }
    for colour in [Colour::Red, Colour::Blue] {
        for (a, b) in aux.edges(colour) {
            writeln!(s, "  e{} -- e{} [color={colour}];", a + 1, b + 1).unwrap();
        }
    }
    s.push_str("}\n");
    s
}

/// `G` with 1-based vertex names; edges of `factor`, if given, are bold.
pub fn graph_to_dot(graph: &Graph, factor: Option<&TwoFactor>) -> String {
    let highlighted = factor.map(TwoFactor::edges).unwrap_or_default();
    let mut s = String::from("graph G {\n  layout=circo;\n");
    for v in 0..graph.n() {
        writeln!(s, "  {};", v + 1).unwrap();
    }
    for (u, v) in graph.edges() {
        let style = if highlighted.binary_search(&(u, v)).is_ok() { " [penwidth=3]" } else { "" };
        writeln!(s, "  {} -- {}{style};", u + 1, v + 1).unwrap();
    }
    s.push_str("}\n");
    s
}
