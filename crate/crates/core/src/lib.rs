//! Toolkit for synchronization questions on deterministic finite automata.
//!
//! An automaton here is a set of states `0..n` together with one or more
//! letters, each a total function on the states. A word (sequence of letters)
//! acts on subsets of states by applying its letters left to right; a word
//! that maps the full state set to a single state is a reset word, and an
//! automaton admitting one is synchronizing.
//!
//! The crate is organized around the weight of a subset: the length of the
//! shortest word collapsing the subset to a single state (infinite when no
//! such word exists). [`lattice`] computes weights over the full subset
//! lattice or over all subsets up to a size bound, and derives reset words,
//! per-size extremal weights, rank profiles, and minimal closed sets from
//! them. [`generators`] builds the standard extremal families: the Černý
//! automata and two families of non-synchronizing two-letter automata whose
//! synchronizable subsets are forced through long rendezvous. [`bounds`]
//! collects the closed-form upper and lower bounds these families are
//! measured against.
//!
//! States are 0-indexed internally; all textual output (set displays, DOT,
//! reports) is 1-indexed.

pub mod automaton;
pub mod bounds;
pub mod generators;
pub mod lattice;

pub use automaton::{Automaton, ModelError, StateSet, Word};
pub use lattice::{EngineCaps, EngineError, Weight, WeightTable};
