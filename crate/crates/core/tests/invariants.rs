//! Property tests tying the engines to each other on randomly drawn
//! automata: every module must tell the same story about the same machine.

use proptest::prelude::*;

use synchro_core::generators::random_automaton;
use synchro_core::lattice::{
    greedy_reset_word, is_synchronizing, min_merge_length, min_rank_profile, pair_table,
    shortest_reset_word,
};
use synchro_core::{Automaton, EngineCaps, StateSet, Weight, WeightTable};

fn drawn_automaton() -> impl Strategy<Value = Automaton> {
    (2usize..=7, 1usize..=3, any::<u64>())
        .prop_map(|(n, letters, seed)| random_automaton(n, letters, seed).unwrap())
}

proptest! {
    #[test]
    fn synchronization_verdicts_agree(aut in drawn_automaton()) {
        let caps = EngineCaps::default();
        let table = WeightTable::full(&aut, &caps).unwrap();
        let full_weight = table.weight(aut.full_set());
        let reset = shortest_reset_word(&aut, &caps).unwrap();
        let sync = is_synchronizing(&aut);

        prop_assert_eq!(sync, full_weight.is_finite());
        prop_assert_eq!(sync, reset.is_some());
        if let Some(word) = reset {
            prop_assert_eq!(word.len() as u32, full_weight.value().unwrap());
            prop_assert!(aut.apply_word(&word, aut.full_set()).unwrap().is_singleton());
        }
    }

    #[test]
    fn every_finite_witness_replays(aut in drawn_automaton()) {
        let caps = EngineCaps::default();
        let table = WeightTable::full(&aut, &caps).unwrap();
        for set in table.covered_sets() {
            match table.weight(set).value() {
                Some(w) => {
                    let word = table.witness_word(&aut, set).unwrap();
                    prop_assert_eq!(word.len(), w as usize);
                    prop_assert!(aut.apply_word(&word, set).unwrap().is_singleton());
                }
                None => prop_assert!(table.witness_word(&aut, set).is_none()),
            }
        }
    }

    #[test]
    fn bounded_tables_restrict_the_full_table(aut in drawn_automaton(), k in 2usize..=4) {
        let caps = EngineCaps::default();
        let full = WeightTable::full(&aut, &caps).unwrap();
        let bounded = WeightTable::bounded(&aut, k, &caps).unwrap();
        for set in bounded.covered_sets() {
            prop_assert_eq!(bounded.weight(set), full.weight(set));
        }
        for k in 1..=bounded.max_covered_size() {
            prop_assert_eq!(
                bounded.rendezvous_min(k).unwrap(),
                full.rendezvous_min(k).unwrap()
            );
            prop_assert_eq!(
                bounded.rendezvous_max(k).unwrap(),
                full.rendezvous_max(k).unwrap()
            );
        }
    }

    #[test]
    fn pair_distances_are_pair_weights(aut in drawn_automaton()) {
        let caps = EngineCaps::default();
        let full = WeightTable::full(&aut, &caps).unwrap();
        let pairs = pair_table(&aut);
        let n = aut.state_count();
        for v in 1..n {
            for u in 0..v {
                let set = StateSet::from_states([u, v]);
                prop_assert_eq!(pairs.distance(u, v), full.weight(set));
                if let Some(word) = pairs.merge_word(&aut, u, v) {
                    prop_assert_eq!(Weight::finite(word.len() as u32), full.weight(set));
                    prop_assert!(aut.apply_word(&word, set).unwrap().is_singleton());
                }
            }
        }
    }

    #[test]
    fn greedy_reset_sits_between_exact_and_pairwise_bound(aut in drawn_automaton()) {
        let caps = EngineCaps::default();
        if !is_synchronizing(&aut) {
            prop_assert!(greedy_reset_word(&aut).is_err());
            return Ok(());
        }
        let n = aut.state_count() as u128;
        let exact = shortest_reset_word(&aut, &caps).unwrap().unwrap();
        let greedy = greedy_reset_word(&aut).unwrap();
        prop_assert!(aut.apply_word(&greedy, aut.full_set()).unwrap().is_singleton());
        prop_assert!(greedy.len() >= exact.len());
        prop_assert!(greedy.len() as u128 <= (n - 1) * n * (n - 1) / 2);
    }

    #[test]
    fn rank_profile_is_monotone_and_pins_the_reset_length(aut in drawn_automaton()) {
        let caps = EngineCaps::default();
        // Any reset word of an n-state automaton fits in (n^3 - n)/6
        // letters, so 60 covers every n <= 7 regardless of alphabet.
        let horizon = 60usize;
        let profile = min_rank_profile(&aut, horizon, &caps).unwrap();
        let ranks = profile.ranks();

        prop_assert_eq!(ranks[0], aut.state_count());
        for w in ranks.windows(2) {
            prop_assert!(w[1] <= w[0]);
            prop_assert!(w[1] >= 1);
        }

        match shortest_reset_word(&aut, &caps).unwrap() {
            Some(word) if word.len() <= horizon => {
                // Rank first reaches 1 exactly at the reset length.
                prop_assert_eq!(profile.min_rank_at(word.len()), 1);
                if word.len() > 0 {
                    prop_assert!(profile.min_rank_at(word.len() - 1) > 1);
                }
            }
            Some(_) => unreachable!("reset length within (n^3 - n)/6 <= 56 for n <= 7"),
            None => prop_assert!(ranks.iter().all(|&r| r > 1)),
        }

        // The full set first shrinks exactly when the profile first dips.
        let merge = min_merge_length(&aut, aut.full_set(), &caps).unwrap();
        let first_dip = ranks.iter().position(|&r| r < aut.state_count());
        match (merge.value(), first_dip) {
            (Some(l), Some(dip)) => prop_assert_eq!(l as usize, dip),
            (Some(_), None) | (None, Some(_)) => prop_assert!(false, "merge/profile disagree"),
            (None, None) => {}
        }
    }
}
