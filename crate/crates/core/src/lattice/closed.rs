//! Minimal closed sets: the sink components of the state digraph.
//!
//! A set is closed when every letter maps it into itself. The minimal
//! closed sets are exactly the strongly connected components without
//! outgoing edges in the digraph with an edge `s -> a(s)` for every letter
//! `a`: a sink component is closed, and any closed subset of one would
//! contradict strong connectivity. A synchronizing automaton has exactly
//! one minimal closed set.

use crate::automaton::{Automaton, StateSet};

/// Minimal closed sets, each with its (always-verified) strong-connectivity
/// flag, in ascending code order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedSetReport {
    pub minimal_closed: Vec<StateSet>,
    pub strongly_connected: Vec<bool>,
}

impl ClosedSetReport {
    pub fn count(&self) -> usize {
        self.minimal_closed.len()
    }
}

/// Tarjan's algorithm over the state digraph, then keep the components with
/// no edge leaving them. The strong-connectivity flag is re-verified by
/// explicit reachability instead of trusted from the construction.
pub fn minimal_closed_sets(aut: &Automaton) -> ClosedSetReport {
    let n = aut.state_count();
    let scc = tarjan(aut);
    let comp_count = scc.iter().max().map_or(0, |&c| c + 1);
    let mut is_sink = vec![true; comp_count];
    for s in 0..n {
        for a in 0..aut.alphabet_size() {
            let t = aut.letter_row(a)[s] as usize;
            if scc[s] != scc[t] {
                is_sink[scc[s]] = false;
            }
        }
    }
    let mut sets: Vec<StateSet> = Vec::new();
    for comp in 0..comp_count {
        if is_sink[comp] {
            sets.push(StateSet::from_states(
                (0..n).filter(|&s| scc[s] == comp),
            ));
        }
    }
    sets.sort_unstable_by_key(|s| s.code());
    let strongly_connected = sets.iter().map(|&s| verify_strongly_connected(aut, s)).collect();
    ClosedSetReport {
        minimal_closed: sets,
        strongly_connected,
    }
}

/// Component id per state; ids are assignment-ordered, not meaningful.
fn tarjan(aut: &Automaton) -> Vec<usize> {
    const UNSET: usize = usize::MAX;
    struct State<'a> {
        aut: &'a Automaton,
        index: Vec<usize>,
        lowlink: Vec<usize>,
        on_stack: Vec<bool>,
        stack: Vec<usize>,
        next_index: usize,
        comp: Vec<usize>,
        comp_count: usize,
    }
    impl State<'_> {
        fn connect(&mut self, v: usize) {
            self.index[v] = self.next_index;
            self.lowlink[v] = self.next_index;
            self.next_index += 1;
            self.stack.push(v);
            self.on_stack[v] = true;
            for a in 0..self.aut.alphabet_size() {
                let w = self.aut.letter_row(a)[v] as usize;
                if self.index[w] == UNSET {
                    self.connect(w);
                    self.lowlink[v] = self.lowlink[v].min(self.lowlink[w]);
                } else if self.on_stack[w] {
                    self.lowlink[v] = self.lowlink[v].min(self.index[w]);
                }
            }
            if self.lowlink[v] == self.index[v] {
                loop {
                    let w = self.stack.pop().expect("root still on stack");
                    self.on_stack[w] = false;
                    self.comp[w] = self.comp_count;
                    if w == v {
                        break;
                    }
                }
                self.comp_count += 1;
            }
        }
    }
    let n = aut.state_count();
    let mut st = State {
        aut,
        index: vec![UNSET; n],
        lowlink: vec![0; n],
        on_stack: vec![false; n],
        stack: Vec::new(),
        next_index: 0,
        comp: vec![0; n],
        comp_count: 0,
    };
    for v in 0..n {
        if st.index[v] == UNSET {
            st.connect(v);
        }
    }
    st.comp
}

/// Every member reaches every other member by letter paths.
fn verify_strongly_connected(aut: &Automaton, set: StateSet) -> bool {
    for start in set.states() {
        let mut reached = StateSet::singleton(start);
        let mut frontier = vec![start];
        while let Some(s) = frontier.pop() {
            for a in 0..aut.alphabet_size() {
                let t = aut.letter_row(a)[s] as usize;
                if !reached.contains(t) {
                    reached = reached.with(t);
                    frontier.push(t);
                }
            }
        }
        if !set.is_subset_of(reached) {
            return false;
        }
    }
    true
}
