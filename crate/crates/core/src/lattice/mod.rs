//! Subset-weight engines and everything derived from them.
//!
//! The weight of a nonempty subset `S` is the length of the shortest word
//! collapsing `S` to one state, infinite if none exists; singletons have
//! weight 0. Two engines compute weights by multi-source backward BFS from
//! the singletons:
//!
//! * [`WeightTable::full`] covers every nonempty subset, indexing a dense
//!   table by the subset's bitmask code. Memory is `O(2^n)`, so `n` is
//!   capped (default 22, hard ceiling 30).
//! * [`WeightTable::bounded`] covers subsets of size at most `k`. Images
//!   never grow, so these subsets form a closed sub-digraph; the engine
//!   materializes it explicitly and is the tool of choice for pair or k-set
//!   questions on automata far beyond full-lattice reach.
//!
//! Both engines record, for every finite-weight set, the first letter of a
//! shortest collapsing word; witness words are reconstructed by walking
//! those letters. All traversal orders are fixed (letters in index order,
//! sets in ascending code order, layer by layer), so results are
//! deterministic across runs and platforms.

mod bounded;
mod closed;
mod full;
mod pairs;
mod words;

pub use closed::{minimal_closed_sets, ClosedSetReport};
pub use pairs::{greedy_reset_word, is_synchronizing, pair_table, PairTable};
pub use words::{min_merge_length, min_rank_profile, shortest_reset_word, RankProfile};

use std::fmt;

use thiserror::Error;

use crate::automaton::{Automaton, ModelError, StateSet, Word};

/// Resource limits for the engines. Every search that could outgrow memory
/// or time checks one of these up front and fails loudly instead of
/// thrashing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EngineCaps {
    /// Largest `n` the full-lattice engine accepts (table is `2^n` entries).
    pub full_lattice_max_n: usize,
    /// Largest subset count the size-bounded engine will materialize.
    pub bounded_node_budget: u64,
    /// Largest number of letter applications an image-BFS may perform.
    pub word_bfs_budget: u64,
}

impl Default for EngineCaps {
    fn default() -> EngineCaps {
        EngineCaps {
            full_lattice_max_n: 22,
            bounded_node_budget: 5_000_000,
            word_bfs_budget: 10_000_000,
        }
    }
}

/// Absolute ceiling for the full-lattice engine regardless of configured
/// cap: beyond this the dense table alone exceeds any reasonable memory.
pub const FULL_LATTICE_CEILING: usize = 30;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("full-lattice engine needs n <= {cap} (configured cap), got n={n}")]
    FullLatticeTooLarge { n: usize, cap: usize },
    #[error("full-lattice engine is hard-capped at n <= {ceiling}, got n={n}")]
    FullLatticeCeiling { n: usize, ceiling: usize },
    #[error("size-bounded engine would need {needed} subsets, over the budget of {budget}")]
    NodeBudgetExceeded { needed: u128, budget: u64 },
    #[error("image search exceeded the budget of {budget} letter applications")]
    ExpansionBudgetExceeded { budget: u64 },
    #[error("automaton is not synchronizing")]
    NotSynchronizing,
    #[error("operation needs a set of at least {min} states, got {size}")]
    SetTooSmall { size: usize, min: usize },
    #[error("layer k={k} is outside the covered range 1..={max}")]
    LayerOutOfRange { k: usize, max: usize },
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Length of a shortest collapsing word, or [`Weight::INFINITE`] when the
/// set cannot be collapsed. Infinity is the maximum representable value, so
/// plain `Ord` comparisons treat it as larger than every finite weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(u32);

impl Weight {
    pub const ZERO: Weight = Weight(0);
    pub const INFINITE: Weight = Weight(u32::MAX);

    pub fn finite(value: u32) -> Weight {
        assert!(value < u32::MAX, "finite weight out of range");
        Weight(value)
    }

    pub fn is_finite(self) -> bool {
        self != Weight::INFINITE
    }

    /// `Some(length)` for finite weights, `None` for infinity.
    pub fn value(self) -> Option<u32> {
        if self.is_finite() {
            Some(self.0)
        } else {
            None
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            Some(v) => write!(f, "{v}"),
            None => write!(f, "inf"),
        }
    }
}

/// Sentinel for "no predecessor letter recorded" (singletons, infinite
/// weight, or uncovered slots).
pub(crate) const NO_PRED: u16 = u16::MAX;

/// Which subsets a [`WeightTable`] covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableScope {
    /// Every nonempty subset of the states.
    FullLattice,
    /// Every nonempty subset of size at most `k`.
    SizeBounded(usize),
}

/// Weights (and shortest-word first letters) for a family of subsets.
///
/// Full-lattice tables are indexed directly by subset code; size-bounded
/// tables by rank in the ascending enumeration of covered codes.
#[derive(Debug, Clone)]
pub struct WeightTable {
    n: usize,
    scope: TableScope,
    weights: Vec<Weight>,
    pred: Vec<u16>,
    /// Ascending covered codes; `None` for full-lattice scope.
    codes: Option<Vec<u64>>,
}

impl WeightTable {
    /// Weights of every nonempty subset, by backward BFS from the
    /// singletons over the reversed subset-transition graph.
    pub fn full(aut: &Automaton, caps: &EngineCaps) -> Result<WeightTable, EngineError> {
        full::build(aut, caps)
    }

    /// Weights of every nonempty subset of size at most `k` (values above
    /// `n` are clamped to `n`; `k = 0` is rejected).
    pub fn bounded(aut: &Automaton, k: usize, caps: &EngineCaps) -> Result<WeightTable, EngineError> {
        bounded::build(aut, k, caps)
    }

    pub fn state_count(&self) -> usize {
        self.n
    }

    pub fn scope(&self) -> TableScope {
        self.scope
    }

    /// Largest subset size the table covers.
    pub fn max_covered_size(&self) -> usize {
        match self.scope {
            TableScope::FullLattice => self.n,
            TableScope::SizeBounded(k) => k,
        }
    }

    pub fn covers(&self, set: StateSet) -> bool {
        !set.is_empty()
            && set.is_subset_of(StateSet::full(self.n))
            && set.len() <= self.max_covered_size()
    }

    fn slot(&self, set: StateSet) -> Option<usize> {
        if !self.covers(set) {
            return None;
        }
        match &self.codes {
            None => Some(set.code() as usize),
            Some(codes) => codes.binary_search(&set.code()).ok(),
        }
    }

    /// Weight of a covered set. Panics on an empty or uncovered set; use
    /// [`try_weight`](Self::try_weight) when coverage is not known.
    pub fn weight(&self, set: StateSet) -> Weight {
        self.try_weight(set)
            .unwrap_or_else(|| panic!("set {set} is not covered by this table"))
    }

    pub fn try_weight(&self, set: StateSet) -> Option<Weight> {
        self.slot(set).map(|i| self.weights[i])
    }

    /// First letter of a recorded shortest collapsing word, if the set is
    /// covered, non-singleton, and of finite weight.
    pub fn predecessor_letter(&self, set: StateSet) -> Option<u16> {
        let i = self.slot(set)?;
        if self.pred[i] == NO_PRED {
            None
        } else {
            Some(self.pred[i])
        }
    }

    /// One step along a recorded shortest collapsing word: the letter and
    /// the image it leads to.
    pub fn predecessor(&self, aut: &Automaton, set: StateSet) -> Option<(u16, StateSet)> {
        let letter = self.predecessor_letter(set)?;
        Some((letter, aut.apply_letter_unchecked(letter as usize, set)))
    }

    /// A shortest word collapsing `set` to a singleton, reconstructed from
    /// the recorded letters; `None` when the weight is infinite. The word's
    /// length always equals the set's weight. Panics on uncovered sets.
    pub fn witness_word(&self, aut: &Automaton, set: StateSet) -> Option<Word> {
        assert_eq!(aut.state_count(), self.n, "table built for a different automaton size");
        let w = self.weight(set);
        w.value()?;
        let mut word = Word::empty();
        let mut cur = set;
        while !cur.is_singleton() {
            let letter = self
                .predecessor_letter(cur)
                .expect("finite non-singleton weight always records a letter");
            word.push(letter);
            cur = aut.apply_letter_unchecked(letter as usize, cur);
        }
        Some(word)
    }

    /// Minimum weight over subsets of size exactly `k`, with the first
    /// (ascending code order) set attaining it. Infinite when no size-k set
    /// can be collapsed.
    pub fn rendezvous_min(&self, k: usize) -> Result<(Weight, StateSet), EngineError> {
        self.check_layer(k)?;
        let mut best: Option<(Weight, StateSet)> = None;
        for code in k_subset_codes(self.n, k) {
            let set = StateSet::from_code(code);
            let w = self.weight(set);
            if best.map_or(true, |(bw, _)| w < bw) {
                best = Some((w, set));
            }
        }
        Ok(best.expect("every layer 1..=n is nonempty"))
    }

    /// Maximum weight over the collapsible subsets of size exactly `k`,
    /// with the first set attaining it, or `None` when no size-k set can be
    /// collapsed at all.
    pub fn rendezvous_max(&self, k: usize) -> Result<Option<(u32, StateSet)>, EngineError> {
        self.check_layer(k)?;
        let mut best: Option<(u32, StateSet)> = None;
        for code in k_subset_codes(self.n, k) {
            let set = StateSet::from_code(code);
            if let Some(w) = self.weight(set).value() {
                if best.map_or(true, |(bw, _)| w > bw) {
                    best = Some((w, set));
                }
            }
        }
        Ok(best)
    }

    /// All size-k sets with their weights, in ascending code order.
    pub fn iter_layer(&self, k: usize) -> impl Iterator<Item = (StateSet, Weight)> + '_ {
        k_subset_codes(self.n, k).map(move |code| {
            let set = StateSet::from_code(code);
            (set, self.weight(set))
        })
    }

    /// Every covered set, in ascending code order.
    pub fn covered_sets(&self) -> Box<dyn Iterator<Item = StateSet> + '_> {
        match &self.codes {
            None => Box::new((1..(1u64 << self.n)).map(StateSet::from_code)),
            Some(codes) => Box::new(codes.iter().map(|&c| StateSet::from_code(c))),
        }
    }

    fn check_layer(&self, k: usize) -> Result<(), EngineError> {
        if k == 0 || k > self.max_covered_size() || k > self.n {
            return Err(EngineError::LayerOutOfRange {
                k,
                max: self.max_covered_size(),
            });
        }
        Ok(())
    }
}

/// Per-letter, per-state preimage masks: entry `[a][x]` holds the states
/// that letter `a` maps onto `x`.
pub(crate) fn preimage_masks(aut: &Automaton) -> Vec<Vec<u64>> {
    let n = aut.state_count();
    (0..aut.alphabet_size())
        .map(|a| {
            let row = aut.letter_row(a);
            let mut masks = vec![0u64; n];
            for s in 0..n {
                masks[row[s] as usize] |= 1u64 << s;
            }
            masks
        })
        .collect()
}

/// All size-k subsets of `0..n` in ascending code order, enumerated
/// directly (never touching the full `2^n` lattice). Empty when `k == 0`
/// or `k > n`.
pub fn subsets_of_size(n: usize, k: usize) -> Box<dyn Iterator<Item = StateSet>> {
    assert!(n <= StateSet::MAX_STATES, "n exceeds the set encoding width");
    if k == 0 || k > n {
        return Box::new(std::iter::empty());
    }
    Box::new(k_subset_codes(n, k).map(StateSet::from_code))
}

/// Codes of all size-k subsets of `0..n` in ascending numeric order
/// (Gosper's hack), iterated without touching `2^n`.
pub(crate) fn k_subset_codes(n: usize, k: usize) -> impl Iterator<Item = u64> {
    debug_assert!(k >= 1 && k <= n && n <= 64);
    let mut cur = (1u64 << k) - 1;
    let mut remaining = crate::bounds::binomial(n as u64, k as u64);
    std::iter::from_fn(move || {
        if remaining == 0 {
            return None;
        }
        remaining -= 1;
        let out = cur;
        // Gosper's hack: next larger integer with the same popcount. The
        // step past the final combination may wrap; the counter stops us
        // from ever yielding that value.
        let low = cur & cur.wrapping_neg();
        let carry = cur.wrapping_add(low);
        cur = carry | (((cur ^ carry) / low) >> 2);
        Some(out)
    })
}
