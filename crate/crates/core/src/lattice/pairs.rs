//! Pair-level synchronization: merge distances for all state pairs.
//!
//! A backward BFS from the already-merged (diagonal) pairs over the
//! reversed pair-transition graph yields, for every unordered pair, the
//! length of its shortest merging word and the first letter of one such
//! word. This is quadratic in the state count and needs no subset lattice;
//! it powers [`is_synchronizing`] (an automaton synchronizes iff every pair
//! merges) and the greedy reset-word heuristic.

use crate::automaton::{Automaton, Word};

use super::{preimage_masks, EngineError, Weight, NO_PRED};

/// Shortest merge distances for all unordered state pairs.
#[derive(Debug, Clone)]
pub struct PairTable {
    n: usize,
    dist: Vec<Weight>,
    letter: Vec<u16>,
}

/// Triangular index of an unordered pair; requires `u < v`.
#[inline]
fn tri(u: usize, v: usize) -> usize {
    debug_assert!(u < v);
    v * (v - 1) / 2 + u
}

/// Builds the merge-distance table by layered backward BFS. Pairs are
/// expanded in ascending code order within each layer and letters in index
/// order, so recorded letters are deterministic.
pub fn pair_table(aut: &Automaton) -> PairTable {
    let n = aut.state_count();
    let alphabet = aut.alphabet_size();
    let pair_count = n * (n - 1) / 2;
    let mut dist = vec![Weight::INFINITE; pair_count];
    let mut letter = vec![NO_PRED; pair_count];

    // Layer 1: pairs some single letter merges. Ascending-code pair order
    // is (larger state, then smaller state), matching the triangular index.
    let mut layer: Vec<u32> = Vec::new();
    for v in 1..n {
        for u in 0..v {
            for a in 0..alphabet {
                let row = aut.letter_row(a);
                if row[u] == row[v] {
                    let i = tri(u, v);
                    dist[i] = Weight::finite(1);
                    letter[i] = a as u16;
                    layer.push(i as u32);
                    break;
                }
            }
        }
    }

    let fibers = preimage_masks(aut);
    let mut next_layer: Vec<u32> = Vec::new();
    let mut d: u32 = 1;
    while !layer.is_empty() {
        for &pair_idx in &layer {
            let (u, v) = unpack(pair_idx as usize, n);
            for a in 0..alphabet {
                // Every preimage pair (x, y) with a(x) = u, a(y) = v; the
                // fibers are disjoint because u != v.
                let mut xs = fibers[a][u];
                while xs != 0 {
                    let x = xs.trailing_zeros() as usize;
                    xs &= xs - 1;
                    let mut ys = fibers[a][v];
                    while ys != 0 {
                        let y = ys.trailing_zeros() as usize;
                        ys &= ys - 1;
                        let i = tri(x.min(y), x.max(y));
                        if dist[i] == Weight::INFINITE {
                            dist[i] = Weight::finite(d + 1);
                            letter[i] = a as u16;
                            next_layer.push(i as u32);
                        }
                    }
                }
            }
        }
        next_layer.sort_unstable();
        std::mem::swap(&mut layer, &mut next_layer);
        next_layer.clear();
        d += 1;
    }

    PairTable { n, dist, letter }
}

/// Recovers `(u, v)` with `u < v` from a triangular index.
fn unpack(i: usize, n: usize) -> (usize, usize) {
    // v is the largest value with tri(0, v) <= i; linear scan is fine for
    // the n <= 64 this crate handles.
    let mut v = 1;
    while tri(0, v + 1) <= i {
        v += 1;
        debug_assert!(v < n);
    }
    (i - tri(0, v), v)
}

impl PairTable {
    pub fn state_count(&self) -> usize {
        self.n
    }

    /// Shortest merge distance; zero for `u == v`.
    pub fn distance(&self, u: usize, v: usize) -> Weight {
        if u == v {
            Weight::ZERO
        } else {
            self.dist[tri(u.min(v), u.max(v))]
        }
    }

    /// True when every pair can merge.
    pub fn all_finite(&self) -> bool {
        self.dist.iter().all(|d| d.is_finite())
    }

    /// Largest finite merge distance with its first attaining pair, or
    /// `None` if no pair merges (or there are no pairs).
    pub fn max_finite(&self) -> Option<(u32, (usize, usize))> {
        let mut best: Option<(u32, (usize, usize))> = None;
        for v in 1..self.n {
            for u in 0..v {
                if let Some(d) = self.dist[tri(u, v)].value() {
                    if best.map_or(true, |(bd, _)| d > bd) {
                        best = Some((d, (u, v)));
                    }
                }
            }
        }
        best
    }

    /// A shortest word merging the pair, following recorded letters;
    /// `None` when the pair cannot merge. The empty word for `u == v`.
    pub fn merge_word(&self, aut: &Automaton, u: usize, v: usize) -> Option<Word> {
        let mut word = Word::empty();
        let (mut u, mut v) = (u, v);
        while u != v {
            let i = tri(u.min(v), u.max(v));
            self.dist[i].value()?;
            let a = self.letter[i];
            word.push(a);
            let row = aut.letter_row(a as usize);
            (u, v) = (row[u] as usize, row[v] as usize);
        }
        Some(word)
    }
}

/// True iff some word collapses the full state set, decided at pair level.
pub fn is_synchronizing(aut: &Automaton) -> bool {
    aut.state_count() == 1 || pair_table(aut).all_finite()
}

/// Reset word by repeated pair merging: in each round, pick the pair of
/// current-image states with the smallest merge distance (ties: smallest
/// pair in ascending code order) and apply its merge word to the whole
/// image. The result is a valid reset word of length at most
/// `(n-1) * C(n,2)`, not necessarily minimal.
pub fn greedy_reset_word(aut: &Automaton) -> Result<Word, EngineError> {
    if aut.state_count() == 1 {
        return Ok(Word::empty());
    }
    let table = pair_table(aut);
    if !table.all_finite() {
        return Err(EngineError::NotSynchronizing);
    }
    let mut image = aut.full_set();
    let mut word = Word::empty();
    while !image.is_singleton() {
        let mut best: Option<(Weight, (usize, usize))> = None;
        for v in image.states() {
            for u in image.states().take_while(|&u| u < v) {
                let d = table.distance(u, v);
                if best.map_or(true, |(bd, _)| d < bd) {
                    best = Some((d, (u, v)));
                }
            }
        }
        let (_, (u, v)) = best.expect("non-singleton image has a pair");
        let merge = table
            .merge_word(aut, u, v)
            .expect("all pairs merge in a synchronizing automaton");
        image = aut
            .apply_word(&merge, image)
            .expect("merge words only use valid letters");
        word.extend_from(&merge);
    }
    Ok(word)
}
