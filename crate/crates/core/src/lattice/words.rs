//! Forward image searches: reset words, rank profiles, merge lengths.
//!
//! These run BFS over the images of a starting set rather than over the
//! whole lattice, so they scale with the number of reachable images and are
//! guarded by the expansion budget instead of a state-count cap.

use std::collections::hash_map::Entry;
use std::collections::HashMap;

use crate::automaton::{Automaton, StateSet, Word};

use super::{EngineCaps, EngineError, Weight};

/// Sentinel parent letter for the BFS root.
const ROOT: u16 = u16::MAX;

/// A minimum-length reset word, or `None` when the automaton is not
/// synchronizing.
///
/// BFS from the full set over reachable images, expanding letters in index
/// order from a FIFO queue, returns the lexicographically least (by letter
/// index) word among the minimum-length reset words.
pub fn shortest_reset_word(
    aut: &Automaton,
    caps: &EngineCaps,
) -> Result<Option<Word>, EngineError> {
    let full = aut.full_set();
    if full.is_singleton() {
        return Ok(Some(Word::empty()));
    }
    let alphabet = aut.alphabet_size();
    // Image code -> (letter applied, parent image code).
    let mut parent: HashMap<u64, (u16, u64)> = HashMap::new();
    parent.insert(full.code(), (ROOT, full.code()));
    let mut queue: std::collections::VecDeque<u64> = std::collections::VecDeque::new();
    queue.push_back(full.code());
    let mut expansions: u64 = 0;
    let reconstruct = |parent: &HashMap<u64, (u16, u64)>, mut code: u64, last: u16| {
        let mut letters = vec![last];
        loop {
            let &(letter, up) = &parent[&code];
            if letter == ROOT {
                break;
            }
            letters.push(letter);
            code = up;
        }
        letters.reverse();
        Word::from_letters(letters)
    };
    while let Some(code) = queue.pop_front() {
        let set = StateSet::from_code(code);
        for a in 0..alphabet {
            expansions += 1;
            if expansions > caps.word_bfs_budget {
                return Err(EngineError::ExpansionBudgetExceeded {
                    budget: caps.word_bfs_budget,
                });
            }
            let image = aut.apply_letter_unchecked(a, set);
            if image.is_singleton() {
                return Ok(Some(reconstruct(&parent, code, a as u16)));
            }
            if let Entry::Vacant(e) = parent.entry(image.code()) {
                e.insert((a as u16, code));
                queue.push_back(image.code());
            }
        }
    }
    Ok(None)
}

/// Minimum achievable rank (image size of the full set) by words of each
/// length `0..=max_len`. Non-increasing by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankProfile {
    ranks: Vec<usize>,
}

impl RankProfile {
    /// Minimum rank over words of length at most `len`.
    pub fn min_rank_at(&self, len: usize) -> usize {
        self.ranks[len]
    }

    /// Entry `l` is the minimum rank over words of length at most `l`.
    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn max_len(&self) -> usize {
        self.ranks.len() - 1
    }
}

/// Rank profile up to `max_len`, by BFS over images of the full set with
/// first-arrival depths. Longer words can only revisit images already seen
/// no later, so per-depth minima with a running prefix minimum are exact.
pub fn min_rank_profile(
    aut: &Automaton,
    max_len: usize,
    caps: &EngineCaps,
) -> Result<RankProfile, EngineError> {
    let full = aut.full_set();
    let mut ranks = Vec::with_capacity(max_len + 1);
    ranks.push(full.len());
    let alphabet = aut.alphabet_size();
    let mut seen: std::collections::HashSet<u64> = std::collections::HashSet::new();
    seen.insert(full.code());
    let mut frontier: Vec<u64> = vec![full.code()];
    let mut next: Vec<u64> = Vec::new();
    let mut expansions: u64 = 0;
    while ranks.len() <= max_len {
        let mut layer_min = usize::MAX;
        for &code in &frontier {
            let set = StateSet::from_code(code);
            for a in 0..alphabet {
                expansions += 1;
                if expansions > caps.word_bfs_budget {
                    return Err(EngineError::ExpansionBudgetExceeded {
                        budget: caps.word_bfs_budget,
                    });
                }
                let image = aut.apply_letter_unchecked(a, set);
                if seen.insert(image.code()) {
                    layer_min = layer_min.min(image.len());
                    next.push(image.code());
                }
            }
        }
        let prev = *ranks.last().expect("profile starts with length 0");
        ranks.push(prev.min(layer_min));
        std::mem::swap(&mut frontier, &mut next);
        next.clear();
        if frontier.is_empty() {
            // All images reached; the profile is constant from here on.
            let stable = *ranks.last().expect("nonempty");
            while ranks.len() <= max_len {
                ranks.push(stable);
            }
            break;
        }
    }
    Ok(RankProfile { ranks })
}

/// Length of the shortest word that strictly shrinks `set`, by BFS over its
/// equal-size images; infinite when every reachable image keeps the size.
/// Requires `|set| >= 2`.
pub fn min_merge_length(
    aut: &Automaton,
    set: StateSet,
    caps: &EngineCaps,
) -> Result<Weight, EngineError> {
    if set.len() < 2 {
        return Err(EngineError::SetTooSmall {
            size: set.len(),
            min: 2,
        });
    }
    aut.apply_word(&Word::empty(), set)?; // validates the set against n
    let size = set.len();
    let alphabet = aut.alphabet_size();
    let mut seen: std::collections::HashSet<u64> = std::collections::HashSet::new();
    seen.insert(set.code());
    let mut frontier: Vec<u64> = vec![set.code()];
    let mut next: Vec<u64> = Vec::new();
    let mut depth: u32 = 0;
    let mut expansions: u64 = 0;
    while !frontier.is_empty() {
        depth += 1;
        for &code in &frontier {
            let cur = StateSet::from_code(code);
            for a in 0..alphabet {
                expansions += 1;
                if expansions > caps.word_bfs_budget {
                    return Err(EngineError::ExpansionBudgetExceeded {
                        budget: caps.word_bfs_budget,
                    });
                }
                let image = aut.apply_letter_unchecked(a, cur);
                if image.len() < size {
                    return Ok(Weight::finite(depth));
                }
                if seen.insert(image.code()) {
                    next.push(image.code());
                }
            }
        }
        std::mem::swap(&mut frontier, &mut next);
        next.clear();
    }
    Ok(Weight::INFINITE)
}
