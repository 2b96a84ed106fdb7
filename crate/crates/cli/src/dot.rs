//! Graphviz renderings: the state digraph and the subset transition graph.

use std::fmt::Write as _;

use synchro_core::lattice::{self, minimal_closed_sets};
use synchro_core::{Automaton, StateSet};

fn letter_label(aut: &Automaton, letter: usize) -> String {
    aut.letter_name(letter)
        .map(str::to_string)
        .unwrap_or_else(|| letter.to_string())
}

fn graph_name(aut: &Automaton) -> String {
    aut.name().unwrap_or("automaton").replace('"', "'")
}

/// State-level digraph: one node per state (1-indexed), one labeled edge
/// per (state, letter). States belonging to a minimal closed set are
/// double-circled.
pub fn state_graph(aut: &Automaton) -> String {
    let n = aut.state_count();
    let closed = minimal_closed_sets(aut);
    let mut in_closed = StateSet::EMPTY;
    for &set in &closed.minimal_closed {
        in_closed = in_closed.union(set);
    }
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"{}\" {{", graph_name(aut));
    out.push_str("  rankdir=LR;\n  node [shape=circle];\n");
    for s in 0..n {
        let shape = if in_closed.contains(s) {
            " [shape=doublecircle]"
        } else {
            ""
        };
        let _ = writeln!(out, "  \"{}\"{shape};", s + 1);
    }
    for s in 0..n {
        for a in 0..aut.alphabet_size() {
            let t = aut.letter_row(a)[s] as usize;
            let _ = writeln!(out, "  \"{}\" -> \"{}\" [label=\"{}\"];", s + 1, t + 1, letter_label(aut, a));
        }
    }
    out.push_str("}\n");
    out
}

/// Subset transition graph restricted to sets of size `<= max_k`: nodes are
/// the nonempty subsets, edges `S -> a(S)` labeled by letter, one
/// `rank=same` row per set size. Images never grow, so the graph is closed
/// under its own edges.
pub fn lattice_graph(aut: &Automaton, max_k: usize) -> String {
    let n = aut.state_count();
    let max_k = max_k.min(n).max(1);
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"{}\" {{", graph_name(aut));
    out.push_str("  rankdir=TB;\n  node [shape=box];\n");
    for k in (1..=max_k).rev() {
        out.push_str("  { rank=same;");
        for set in lattice::subsets_of_size(n, k) {
            let _ = write!(out, " \"{set}\";");
        }
        out.push_str(" }\n");
    }
    for k in 1..=max_k {
        for set in lattice::subsets_of_size(n, k) {
            for a in 0..aut.alphabet_size() {
                let img = aut.apply_letter_unchecked(a, set);
                let _ = writeln!(
                    out,
                    "  \"{set}\" -> \"{img}\" [label=\"{}\"];",
                    letter_label(aut, a)
                );
            }
        }
    }
    out.push_str("}\n");
    out
}
