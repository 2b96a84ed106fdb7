//! Size-bounded weight table: explicit digraph on subsets of size <= k.
//!
//! Images never grow, so the size-<=k subsets are closed under every
//! letter. The builder enumerates them (ascending codes, binary search for
//! indexing), materializes the reversed edge list in CSR form, and runs the
//! same layered backward BFS as the full engine. Node count is checked
//! against the budget before anything is allocated.

use crate::automaton::{Automaton, StateSet};
use crate::bounds::binomial;

use super::{EngineCaps, EngineError, TableScope, Weight, WeightTable, NO_PRED};

pub(super) fn build(
    aut: &Automaton,
    k: usize,
    caps: &EngineCaps,
) -> Result<WeightTable, EngineError> {
    let n = aut.state_count();
    if k == 0 {
        return Err(EngineError::LayerOutOfRange { k, max: n });
    }
    let k = k.min(n);
    let alphabet = aut.alphabet_size();

    let needed: u128 = (1..=k).map(|i| binomial(n as u64, i as u64)).sum();
    if needed > caps.bounded_node_budget as u128 {
        return Err(EngineError::NodeBudgetExceeded {
            needed,
            budget: caps.bounded_node_budget,
        });
    }
    let node_count = needed as usize;

    let mut codes: Vec<u64> = Vec::with_capacity(node_count);
    for size in 1..=k {
        codes.extend(super::k_subset_codes(n, size));
    }
    codes.sort_unstable();
    let index_of = |code: u64| -> usize {
        codes.binary_search(&code).expect("image stays within the covered sizes")
    };

    // Reversed edges in CSR form, filled letter-major then source-ascending
    // so each target's slice lists smaller letters first.
    let mut degree = vec![0u32; node_count + 1];
    for a in 0..alphabet {
        for &code in &codes {
            let image = aut.apply_letter_unchecked(a, StateSet::from_code(code));
            degree[index_of(image.code()) + 1] += 1;
        }
    }
    for i in 0..node_count {
        degree[i + 1] += degree[i];
    }
    let starts = degree;
    let mut cursor = starts.clone();
    let edge_count = starts[node_count] as usize;
    let mut edge_letter = vec![0u16; edge_count];
    let mut edge_source = vec![0u32; edge_count];
    for a in 0..alphabet {
        for (i, &code) in codes.iter().enumerate() {
            let image = aut.apply_letter_unchecked(a, StateSet::from_code(code));
            let t = index_of(image.code());
            let pos = cursor[t] as usize;
            cursor[t] += 1;
            edge_letter[pos] = a as u16;
            edge_source[pos] = i as u32;
        }
    }

    let mut weights = vec![Weight::INFINITE; node_count];
    let mut pred = vec![NO_PRED; node_count];
    // Singleton codes are the n smallest powers of two; their indices come
    // first per size but interleave with nothing below size 1, so look each
    // one up. Layers are kept ascending by index (equivalently by code).
    let mut layer: Vec<u32> = (0..n).map(|s| index_of(1u64 << s) as u32).collect();
    layer.sort_unstable();
    for &i in &layer {
        weights[i as usize] = Weight::ZERO;
    }
    let mut next_layer: Vec<u32> = Vec::new();
    let mut w: u32 = 0;
    while !layer.is_empty() {
        for &t in &layer {
            let (lo, hi) = (starts[t as usize] as usize, starts[t as usize + 1] as usize);
            for e in lo..hi {
                let src = edge_source[e] as usize;
                if weights[src] == Weight::INFINITE {
                    weights[src] = Weight::finite(w + 1);
                    pred[src] = edge_letter[e];
                    next_layer.push(src as u32);
                }
            }
        }
        next_layer.sort_unstable();
        std::mem::swap(&mut layer, &mut next_layer);
        next_layer.clear();
        w += 1;
    }

    Ok(WeightTable {
        n,
        scope: TableScope::SizeBounded(k),
        weights,
        pred,
        codes: Some(codes),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cerny, triple_gadget};

    #[test]
    fn pair_table_of_cerny10_tops_at_45() {
        let a = cerny(10).unwrap();
        let t = WeightTable::bounded(&a, 2, &EngineCaps::default()).unwrap();
        let (max, argmax) = t.rendezvous_max(2).unwrap().unwrap();
        assert_eq!(max, 45);
        // The extremal pair is {2, n/2+2} displayed, i.e. {1, 6} internal.
        assert_eq!(argmax, StateSet::from_states([1, 6]));
        assert_eq!(t.max_covered_size(), 2);
    }

    #[test]
    fn singleton_layer_is_all_zero() {
        let a = cerny(9).unwrap();
        let t = WeightTable::bounded(&a, 1, &EngineCaps::default()).unwrap();
        for s in 0..9 {
            assert_eq!(t.weight(StateSet::singleton(s)), Weight::ZERO);
        }
        let (m, _) = t.rendezvous_min(1).unwrap();
        assert_eq!(m, Weight::ZERO);
    }

    #[test]
    fn k_is_clamped_to_n() {
        let a = cerny(3).unwrap();
        let t = WeightTable::bounded(&a, 10, &EngineCaps::default()).unwrap();
        assert_eq!(t.max_covered_size(), 3);
        assert_eq!(t.weight(a.full_set()), Weight::finite(4));
    }

    #[test]
    fn budget_is_enforced() {
        let a = cerny(20).unwrap();
        let caps = EngineCaps {
            bounded_node_budget: 100,
            ..EngineCaps::default()
        };
        assert!(matches!(
            WeightTable::bounded(&a, 3, &caps),
            Err(EngineError::NodeBudgetExceeded { .. })
        ));
        assert!(matches!(
            WeightTable::bounded(&a, 0, &EngineCaps::default()),
            Err(EngineError::LayerOutOfRange { .. })
        ));
    }

    #[test]
    fn agrees_with_full_engine_on_triple_gadget() {
        let a = triple_gadget(12).unwrap();
        let caps = EngineCaps::default();
        let full = WeightTable::full(&a, &caps).unwrap();
        let bounded = WeightTable::bounded(&a, 3, &caps).unwrap();
        for set in bounded.covered_sets() {
            assert_eq!(bounded.weight(set), full.weight(set), "set {set}");
        }
    }
}
