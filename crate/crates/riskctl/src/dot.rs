//! Graphviz export of Hasse diagrams.

use std::fmt::Write;

use relrisk::Poset;

/// Renders the cover relation as a `digraph`. Edges point from the smaller
/// to the larger element and `rankdir=BT` draws larger elements higher, so
/// the output reads like the usual Hasse diagram. Edge order follows the
/// element declaration order of the poset, making the output stable.
pub fn dot_export(poset: &Poset) -> String {
    let mut out = String::from("digraph hasse {\nrankdir=BT;\n");
    for (a, b) in poset.hasse().pairs() {
        writeln!(out, "\"{a}\" -> \"{b}\";").expect("string writes cannot fail");
    }
    out.push_str("}\n");
    out
}
