//! Cross-checks of the lattice engines against independent brute-force
//! oracles on automata small enough to enumerate exhaustively.
//!
//! The oracle computes every subset weight by building the forward image
//! graph (one edge per subset per letter, found by direct application) and
//! running a plain multi-source BFS from the singletons over its reversal.
//! It shares no code with the fiber-product engine it checks.

use std::collections::VecDeque;

use synchro_core::bounds;
use synchro_core::generators::{cerny, random_automaton, triple_gadget};
use synchro_core::lattice::{
    self, greedy_reset_word, is_synchronizing, min_merge_length, min_rank_profile, pair_table,
    shortest_reset_word,
};
use synchro_core::{Automaton, EngineCaps, StateSet, Weight, WeightTable};

/// Weight of every nonempty subset, indexed by code; `u32::MAX` = infinite.
fn oracle_weights(aut: &Automaton) -> Vec<u32> {
    let n = aut.state_count();
    let size = 1usize << n;
    // Reversed image graph: sources[t] lists every s with a(s) = t for some a.
    let mut sources: Vec<Vec<u32>> = vec![Vec::new(); size];
    for code in 1..size {
        let set = StateSet::from_code(code as u64);
        for a in 0..aut.alphabet_size() {
            let img = aut.apply_letter(a, set).unwrap();
            sources[img.code() as usize].push(code as u32);
        }
    }
    let mut dist = vec![u32::MAX; size];
    let mut queue = VecDeque::new();
    for s in 0..n {
        let code = 1usize << s;
        dist[code] = 0;
        queue.push_back(code);
    }
    while let Some(t) = queue.pop_front() {
        for &s in &sources[t] {
            if dist[s as usize] == u32::MAX {
                dist[s as usize] = dist[t] + 1;
                queue.push_back(s as usize);
            }
        }
    }
    dist
}

fn battery() -> Vec<Automaton> {
    let mut auts: Vec<Automaton> = (2..=8).map(|n| cerny(n).unwrap()).collect();
    auts.push(triple_gadget(12).unwrap());
    // All states to one: resets in a single letter.
    auts.push(Automaton::new(3, vec![vec![1, 1, 1], vec![0, 1, 2]]).unwrap());
    // Identity letters only: nothing ever merges.
    auts.push(Automaton::new(3, vec![vec![0, 1, 2]]).unwrap());
    for seed in 0..20 {
        auts.push(random_automaton(5, 2, seed).unwrap());
    }
    for seed in 0..10 {
        auts.push(random_automaton(6, 3, 1000 + seed).unwrap());
    }
    for seed in 0..30 {
        auts.push(random_automaton(4, 2, 2000 + seed).unwrap());
    }
    auts
}

fn weight_as_u32(w: Weight) -> u32 {
    w.value().unwrap_or(u32::MAX)
}

#[test]
fn full_engine_matches_brute_force_bfs() {
    let caps = EngineCaps::default();
    for aut in battery() {
        let oracle = oracle_weights(&aut);
        let table = WeightTable::full(&aut, &caps).unwrap();
        for code in 1..(1u64 << aut.state_count()) {
            let set = StateSet::from_code(code);
            assert_eq!(
                weight_as_u32(table.weight(set)),
                oracle[code as usize],
                "{:?} weight of {set} disagrees with oracle",
                aut.name()
            );
        }
    }
}

#[test]
fn weights_satisfy_the_one_step_recurrence() {
    let caps = EngineCaps::default();
    for aut in battery() {
        let table = WeightTable::full(&aut, &caps).unwrap();
        for code in 1..(1u64 << aut.state_count()) {
            let set = StateSet::from_code(code);
            if set.is_singleton() {
                assert_eq!(table.weight(set), Weight::ZERO);
                continue;
            }
            // t(S) = 1 + min over letters of t(a(S)), with min of all-infinite
            // staying infinite.
            let best = (0..aut.alphabet_size())
                .map(|a| weight_as_u32(table.weight(aut.apply_letter(a, set).unwrap())))
                .min()
                .unwrap();
            let expect = if best == u32::MAX { u32::MAX } else { best + 1 };
            assert_eq!(weight_as_u32(table.weight(set)), expect);
        }
    }
}

#[test]
fn weight_is_monotone_under_inclusion() {
    let caps = EngineCaps::default();
    for aut in battery() {
        if aut.state_count() > 8 {
            continue;
        }
        let table = WeightTable::full(&aut, &caps).unwrap();
        let size = 1u64 << aut.state_count();
        for sub in 1..size {
            let wsub = table.weight(StateSet::from_code(sub));
            for sup in sub..size {
                if sub & sup == sub {
                    assert!(
                        wsub <= table.weight(StateSet::from_code(sup)),
                        "subset {} heavier than superset {}",
                        StateSet::from_code(sub),
                        StateSet::from_code(sup)
                    );
                }
            }
        }
    }
}

#[test]
fn witness_words_collapse_their_sets() {
    let caps = EngineCaps::default();
    for aut in battery() {
        let table = WeightTable::full(&aut, &caps).unwrap();
        for code in 1..(1u64 << aut.state_count()) {
            let set = StateSet::from_code(code);
            match table.weight(set).value() {
                Some(w) => {
                    let word = table.witness_word(&aut, set).unwrap();
                    assert_eq!(word.len(), w as usize);
                    assert!(aut.apply_word(&word, set).unwrap().is_singleton());
                }
                None => assert!(table.witness_word(&aut, set).is_none()),
            }
        }
    }
}

#[test]
fn bounded_engine_and_pair_table_agree_with_full() {
    let caps = EngineCaps::default();
    for aut in battery() {
        let n = aut.state_count();
        let full = WeightTable::full(&aut, &caps).unwrap();
        for k in 2..=4.min(n) {
            let bounded = WeightTable::bounded(&aut, k, &caps).unwrap();
            for set in bounded.covered_sets() {
                assert_eq!(bounded.weight(set), full.weight(set));
                if let Some(w) = bounded.weight(set).value() {
                    let word = bounded.witness_word(&aut, set).unwrap();
                    assert_eq!(word.len(), w as usize);
                    assert!(aut.apply_word(&word, set).unwrap().is_singleton());
                }
            }
        }
        let pairs = pair_table(&aut);
        for v in 1..n {
            for u in 0..v {
                assert_eq!(
                    pairs.distance(u, v),
                    full.weight(StateSet::from_states([u, v]))
                );
            }
        }
    }
}

#[test]
fn rendezvous_extremes_match_direct_scans() {
    let caps = EngineCaps::default();
    for aut in battery() {
        let n = aut.state_count();
        let oracle = oracle_weights(&aut);
        let table = WeightTable::full(&aut, &caps).unwrap();
        for k in 1..=n {
            let layer: Vec<(u64, u32)> = (1..(1u64 << n))
                .filter(|&c| StateSet::from_code(c).len() == k)
                .map(|c| (c, oracle[c as usize]))
                .collect();

            let (min_w, min_set) = table.rendezvous_min(k).unwrap();
            let best = layer.iter().map(|&(_, w)| w).min().unwrap();
            assert_eq!(weight_as_u32(min_w), best);
            // The reported argmin is the first k-set in code order attaining it.
            let first = layer.iter().find(|&&(_, w)| w == best).unwrap().0;
            assert_eq!(min_set.code(), first);

            let max = table.rendezvous_max(k).unwrap();
            let finite: Vec<&(u64, u32)> =
                layer.iter().filter(|&&(_, w)| w != u32::MAX).collect();
            match max {
                None => assert!(finite.is_empty() || k == 0),
                Some((w, set)) => {
                    let top = finite.iter().map(|&&(_, w)| w).max().unwrap();
                    assert_eq!(w, top);
                    let first = finite.iter().find(|&&&(_, fw)| fw == top).unwrap().0;
                    assert_eq!(set.code(), first);
                }
            }
        }
    }
}

#[test]
fn reset_words_are_shortest_and_lexicographically_least() {
    let caps = EngineCaps::default();
    for aut in battery() {
        let n = aut.state_count();
        let oracle = oracle_weights(&aut);
        let full_weight = oracle[(1usize << n) - 1];
        let reset = shortest_reset_word(&aut, &caps).unwrap();
        match reset {
            None => {
                assert_eq!(full_weight, u32::MAX);
                assert!(!is_synchronizing(&aut));
            }
            Some(word) => {
                assert_eq!(word.len() as u32, full_weight);
                assert!(aut.apply_word(&word, aut.full_set()).unwrap().is_singleton());
                assert!(is_synchronizing(&aut));
                // For short resets, replay every word of the same length in
                // lexicographic order; the first that resets must be ours.
                if word.len() <= 10 && aut.alphabet_size() <= 3 {
                    let found = first_resetting_word(&aut, word.len());
                    assert_eq!(found.unwrap(), word.letters().to_vec());
                }
            }
        }
    }
}

/// First word of length `len` (lexicographic by letter index) that resets.
fn first_resetting_word(aut: &Automaton, len: usize) -> Option<Vec<u16>> {
    let k = aut.alphabet_size() as u16;
    let mut letters = vec![0u16; len];
    loop {
        let word = synchro_core::Word::from_letters(letters.clone());
        if aut.apply_word(&word, aut.full_set()).unwrap().is_singleton() {
            return Some(letters);
        }
        // Odometer step.
        let mut pos = len;
        loop {
            if pos == 0 {
                return None;
            }
            pos -= 1;
            letters[pos] += 1;
            if letters[pos] < k {
                break;
            }
            letters[pos] = 0;
        }
    }
}

#[test]
fn merge_lengths_match_word_enumeration() {
    let caps = EngineCaps::default();
    let limit = 9usize;
    for aut in battery() {
        let n = aut.state_count();
        if n > 5 || aut.alphabet_size() > 2 {
            continue;
        }
        for code in 1..(1u64 << n) {
            let set = StateSet::from_code(code);
            if set.len() < 2 {
                continue;
            }
            let computed = min_merge_length(&aut, set, &caps).unwrap();
            match shortest_shrink_by_enumeration(&aut, set, limit) {
                Some(l) => assert_eq!(computed, Weight::finite(l as u32)),
                None => assert!(
                    !computed.is_finite() || computed.value().unwrap() as usize > limit
                ),
            }
        }
    }
}

/// Shortest length `<= limit` at which some word strictly shrinks `set`,
/// by checking every word of each length.
fn shortest_shrink_by_enumeration(aut: &Automaton, set: StateSet, limit: usize) -> Option<usize> {
    let k = aut.alphabet_size();
    for len in 1..=limit {
        let mut letters = vec![0u16; len];
        'words: loop {
            let mut img = set;
            for &a in &letters {
                img = aut.apply_letter(a as usize, img).unwrap();
            }
            if img.len() < set.len() {
                return Some(len);
            }
            let mut pos = len;
            loop {
                if pos == 0 {
                    break 'words;
                }
                pos -= 1;
                letters[pos] += 1;
                if (letters[pos] as usize) < k {
                    break;
                }
                letters[pos] = 0;
            }
        }
    }
    None
}

#[test]
fn rank_profiles_match_word_enumeration() {
    let caps = EngineCaps::default();
    let max_len = 10usize;
    for aut in battery() {
        let n = aut.state_count();
        if n > 4 || aut.alphabet_size() > 2 {
            continue;
        }
        let profile = min_rank_profile(&aut, max_len, &caps).unwrap();
        // Brute force: minimal rank over every word of length exactly l,
        // then a running prefix minimum.
        let k = aut.alphabet_size();
        let mut best = n;
        for len in 0..=max_len {
            let mut letters = vec![0u16; len];
            'words: loop {
                let word = synchro_core::Word::from_letters(letters.clone());
                best = best.min(aut.rank(&word).unwrap());
                let mut pos = len;
                loop {
                    if pos == 0 {
                        break 'words;
                    }
                    pos -= 1;
                    letters[pos] += 1;
                    if (letters[pos] as usize) < k {
                        break;
                    }
                    letters[pos] = 0;
                }
            }
            assert_eq!(
                profile.min_rank_at(len),
                best,
                "{:?} profile at length {len}",
                aut.name()
            );
        }
    }
}

#[test]
fn greedy_reset_is_valid_and_within_the_pairwise_bound() {
    let caps = EngineCaps::default();
    for aut in battery() {
        let n = aut.state_count();
        if !is_synchronizing(&aut) {
            assert!(greedy_reset_word(&aut).is_err());
            continue;
        }
        let word = greedy_reset_word(&aut).unwrap();
        assert!(aut.apply_word(&word, aut.full_set()).unwrap().is_singleton());
        let exact = shortest_reset_word(&aut, &caps).unwrap().unwrap();
        assert!(word.len() >= exact.len());
        assert!(word.len() as u128 <= bounds::naive_reset(n as u64).unwrap());
    }
}

#[test]
fn merge_lengths_respect_the_per_size_bound() {
    // Every synchronizable set can be shrunk within the closed-form
    // per-size bound; checked empirically across the battery.
    let caps = EngineCaps::default();
    for aut in battery() {
        if !is_synchronizing(&aut) {
            continue;
        }
        let n = aut.state_count();
        for code in 1..(1u64 << n) {
            let set = StateSet::from_code(code);
            if set.len() < 2 {
                continue;
            }
            let merge = min_merge_length(&aut, set, &caps).unwrap();
            let cap = bounds::frankl_pin_set(n as u64, set.len() as u64).unwrap();
            assert!(
                (weight_as_u32(merge) as u128) <= cap,
                "{:?}: merge of {set} took {merge}, bound {cap}",
                aut.name()
            );
        }
    }
}

#[test]
fn minimal_closed_sets_control_synchronizability() {
    // A synchronizing automaton funnels every state into one terminal
    // component, so it must have exactly one minimal closed set.
    for aut in battery() {
        let report = lattice::minimal_closed_sets(&aut);
        assert!(report.count() >= 1);
        if is_synchronizing(&aut) {
            assert_eq!(
                report.count(),
                1,
                "{:?} synchronizes but has {} minimal closed sets",
                aut.name(),
                report.count()
            );
        }
    }
}
