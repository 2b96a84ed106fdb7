//! Full-lattice weight table: backward BFS over all `2^n - 1` subsets.
//!
//! When a set `T` is popped at weight `w`, its in-edges under a letter `a`
//! are exactly the sets `S` with `a(S) = T`. Those factor: `S` must pick a
//! nonempty subset of the fiber `a^{-1}(x)` for every `x` in `T` (and
//! nothing else), so the in-edges are the product of per-fiber nonempty
//! subsets, enumerated with an odometer. Every set is somebody's in-edge
//! exactly once per letter, so the whole enumeration costs `2^n` per letter
//! no matter how the BFS layers fall.

use crate::automaton::Automaton;

use super::{
    preimage_masks, EngineCaps, EngineError, TableScope, Weight, WeightTable, FULL_LATTICE_CEILING,
    NO_PRED,
};

pub(super) fn build(aut: &Automaton, caps: &EngineCaps) -> Result<WeightTable, EngineError> {
    let n = aut.state_count();
    if n > caps.full_lattice_max_n {
        return Err(EngineError::FullLatticeTooLarge {
            n,
            cap: caps.full_lattice_max_n,
        });
    }
    if n > FULL_LATTICE_CEILING {
        return Err(EngineError::FullLatticeCeiling {
            n,
            ceiling: FULL_LATTICE_CEILING,
        });
    }
    let alphabet = aut.alphabet_size();
    let fibers = preimage_masks(aut);
    let size = 1usize << n;
    let mut weights = vec![Weight::INFINITE; size];
    let mut pred = vec![NO_PRED; size];

    // Layer 0: the singletons, in ascending code order.
    let mut layer: Vec<u64> = (0..n).map(|s| 1u64 << s).collect();
    for &code in &layer {
        weights[code as usize] = Weight::ZERO;
    }
    let mut next_layer: Vec<u64> = Vec::new();
    let mut classes: Vec<u64> = Vec::with_capacity(n);
    let mut subs: Vec<u64> = Vec::with_capacity(n);
    let mut w: u32 = 0;

    while !layer.is_empty() {
        for &t_code in &layer {
            'letters: for a in 0..alphabet {
                classes.clear();
                let mut bits = t_code;
                while bits != 0 {
                    let x = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    let fiber = fibers[a][x];
                    if fiber == 0 {
                        // Some target state has no preimage: T is not an
                        // exact image under this letter.
                        continue 'letters;
                    }
                    classes.push(fiber);
                }
                subs.clear();
                subs.extend(classes.iter().map(|&m| m & m.wrapping_neg()));
                'product: loop {
                    let mut s_code = 0u64;
                    for &part in &subs {
                        s_code |= part;
                    }
                    let slot = &mut weights[s_code as usize];
                    if *slot == Weight::INFINITE {
                        *slot = Weight::finite(w + 1);
                        pred[s_code as usize] = a as u16;
                        next_layer.push(s_code);
                    }
                    // Odometer: advance the first fiber's subset; on wrap,
                    // reset it and carry into the next fiber. Subsets of a
                    // mask step in ascending order via (s - m) & m.
                    for i in 0..subs.len() {
                        let m = classes[i];
                        subs[i] = subs[i].wrapping_sub(m) & m;
                        if subs[i] != 0 {
                            continue 'product;
                        }
                        subs[i] = m & m.wrapping_neg();
                    }
                    break;
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
        scope: TableScope::FullLattice,
        weights,
        pred,
        codes: None,
    })
}
