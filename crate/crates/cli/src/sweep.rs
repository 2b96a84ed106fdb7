//! Batch surveys over automaton families, exhaustive or seeded-random,
//! with per-row statistics and running aggregates.

use anyhow::{bail, Context, Result};
use rayon::prelude::*;
use serde_json::json;

use synchro_core::generators::random_automaton;
use synchro_core::lattice::{is_synchronizing, shortest_reset_word};
use synchro_core::{Automaton, EngineCaps, WeightTable};

/// Which family a sweep walks.
#[derive(Debug, Clone)]
pub enum SweepMode {
    /// Every pair of functions on `n` states as a two-letter automaton.
    /// There are `n^(2n)` of them, so this is restricted to `n <= 4`.
    Exhaustive { n: usize },
    /// `count` automata drawn at seeds `seed..seed + count`.
    Random {
        n: usize,
        alphabet: usize,
        seed: u64,
        count: u64,
    },
}

#[derive(Debug, Clone)]
pub struct SweepOptions {
    pub mode: SweepMode,
    pub caps: EngineCaps,
}

/// A weight column entry: the size may exceed `n`, the weight may be
/// infinite, or it is a plain length.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Cell {
    NotApplicable,
    Infinite,
    Finite(u32),
}

impl Cell {
    fn render(self) -> String {
        match self {
            Cell::NotApplicable => String::new(),
            Cell::Infinite => "inf".to_string(),
            Cell::Finite(v) => v.to_string(),
        }
    }

    fn finite(self) -> Option<u32> {
        match self {
            Cell::Finite(v) => Some(v),
            _ => None,
        }
    }
}

struct RowStats {
    sync: bool,
    reset: Option<u32>,
    /// Minimum weight per size `k = 3, 4, 5`.
    m: [Cell; 3],
    max_pair: Option<u32>,
}

fn row_stats(aut: &Automaton, caps: &EngineCaps) -> Result<RowStats> {
    let n = aut.state_count();
    let use_full = n <= caps.full_lattice_max_n;
    let table = if use_full {
        WeightTable::full(aut, caps)?
    } else {
        WeightTable::bounded(aut, 5.min(n), caps)?
    };
    let (sync, reset) = if use_full {
        let w = table.weight(aut.full_set());
        (w.is_finite(), w.value())
    } else {
        let sync = is_synchronizing(aut);
        let reset = if sync {
            shortest_reset_word(aut, caps)?.map(|w| w.len() as u32)
        } else {
            None
        };
        (sync, reset)
    };
    let mut m = [Cell::NotApplicable; 3];
    for (slot, k) in m.iter_mut().zip(3usize..=5) {
        if k <= n {
            let (w, _) = table.rendezvous_min(k)?;
            *slot = match w.value() {
                Some(v) => Cell::Finite(v),
                None => Cell::Infinite,
            };
        }
    }
    let max_pair = if n >= 2 {
        table.rendezvous_max(2)?.map(|(w, _)| w)
    } else {
        None
    };
    Ok(RowStats {
        sync,
        reset,
        m,
        max_pair,
    })
}

/// Function index -> transition row, reading the digits of `idx` base `n`
/// most significant first, so row strings ascend lexicographically with
/// the index ("0000", "0001", ..).
pub(crate) fn decode_function(idx: u64, n: usize) -> Vec<u32> {
    let mut row = vec![0u32; n];
    let mut rest = idx;
    for s in (0..n).rev() {
        row[s] = (rest % n as u64) as u32;
        rest /= n as u64;
    }
    row
}

fn digits(row: &[u32]) -> String {
    row.iter().map(|d| d.to_string()).collect()
}

/// Per-metric running maximum with the first row attaining it.
struct MaxTracker {
    best: Option<(u32, usize)>,
}

impl MaxTracker {
    fn new() -> MaxTracker {
        MaxTracker { best: None }
    }

    fn observe(&mut self, value: Option<u32>, row: usize) {
        if let Some(v) = value {
            if self.best.map_or(true, |(bv, _)| v > bv) {
                self.best = Some((v, row));
            }
        }
    }

    fn json(&self, witness: impl Fn(usize) -> serde_json::Value) -> serde_json::Value {
        match self.best {
            None => serde_json::Value::Null,
            Some((v, row)) => {
                let mut obj = json!({ "value": v });
                let w = witness(row);
                for (key, val) in w.as_object().expect("witness is an object") {
                    obj.as_object_mut()
                        .expect("aggregate is an object")
                        .insert(key.clone(), val.clone());
                }
                obj
            }
        }
    }
}

/// Runs the sweep and renders the whole output: a `#` header naming the
/// tool version, mode, and caps, a CSV body in deterministic row order,
/// and a trailing `# aggregates` JSON line with each maximum and the first
/// row attaining it. Byte-identical across reruns with equal options.
pub fn run_sweep(opts: &SweepOptions) -> Result<String> {
    match &opts.mode {
        SweepMode::Exhaustive { n } => exhaustive_sweep(*n, &opts.caps),
        SweepMode::Random {
            n,
            alphabet,
            seed,
            count,
        } => random_sweep(*n, *alphabet, *seed, *count, &opts.caps),
    }
}

fn header(mode_line: &str, caps: &EngineCaps) -> String {
    format!(
        "# synchro {} sweep {mode_line}\n# caps: full_lattice_max_n={} bounded_node_budget={} word_bfs_budget={}\n",
        env!("CARGO_PKG_VERSION"),
        caps.full_lattice_max_n,
        caps.bounded_node_budget,
        caps.word_bfs_budget,
    )
}

const ROW_COLUMNS: &str = "synchronizing,reset_len,m3,m4,m5,max_pair";

fn render_stats(row: &RowStats) -> String {
    format!(
        "{},{},{},{},{},{}",
        row.sync,
        row.reset.map(|v| v.to_string()).unwrap_or_default(),
        row.m[0].render(),
        row.m[1].render(),
        row.m[2].render(),
        row.max_pair.map(|v| v.to_string()).unwrap_or_default(),
    )
}

fn aggregate_lines(
    rows: &[RowStats],
    witness: impl Fn(usize) -> serde_json::Value,
) -> String {
    let mut reset = MaxTracker::new();
    let mut m3 = MaxTracker::new();
    let mut m4 = MaxTracker::new();
    let mut m5 = MaxTracker::new();
    let mut pair = MaxTracker::new();
    let mut sync_count: u64 = 0;
    for (i, row) in rows.iter().enumerate() {
        sync_count += row.sync as u64;
        reset.observe(row.reset, i);
        m3.observe(row.m[0].finite(), i);
        m4.observe(row.m[1].finite(), i);
        m5.observe(row.m[2].finite(), i);
        pair.observe(row.max_pair, i);
    }
    let aggregates = json!({
        "rows": rows.len(),
        "synchronizing": sync_count,
        "max_reset": reset.json(&witness),
        "max_m3": m3.json(&witness),
        "max_m4": m4.json(&witness),
        "max_m5": m5.json(&witness),
        "max_pair": pair.json(&witness),
    });
    format!("# aggregates {aggregates}\n")
}

fn exhaustive_sweep(n: usize, caps: &EngineCaps) -> Result<String> {
    if !(2..=4).contains(&n) {
        bail!("exhaustive sweeps cover n in 2..=4 (n^(2n) automata), got n={n}");
    }
    let per_letter = (n as u64).pow(n as u32);
    let total = per_letter * per_letter;
    let rows: Vec<RowStats> = (0..total)
        .into_par_iter()
        .map(|idx| {
            let f = decode_function(idx / per_letter, n);
            let g = decode_function(idx % per_letter, n);
            let aut = Automaton::new(n, vec![f, g]).expect("decoded rows are in range");
            row_stats(&aut, caps)
        })
        .collect::<Result<_>>()?;
    let witness = |row: usize| {
        let idx = row as u64;
        json!({
            "f": digits(&decode_function(idx / per_letter, n)),
            "g": digits(&decode_function(idx % per_letter, n)),
        })
    };
    let mut out = header(&format!("mode=exhaustive n={n} alphabet=2"), caps);
    out.push_str(&format!("f,g,{ROW_COLUMNS}\n"));
    for (i, row) in rows.iter().enumerate() {
        let idx = i as u64;
        out.push_str(&format!(
            "{},{},{}\n",
            digits(&decode_function(idx / per_letter, n)),
            digits(&decode_function(idx % per_letter, n)),
            render_stats(row),
        ));
    }
    out.push_str(&aggregate_lines(&rows, witness));
    Ok(out)
}

fn random_sweep(n: usize, alphabet: usize, seed: u64, count: u64, caps: &EngineCaps) -> Result<String> {
    if n < 2 {
        bail!("random sweeps need n >= 2, got n={n}");
    }
    let rows: Vec<RowStats> = (0..count)
        .into_par_iter()
        .map(|i| {
            let aut = random_automaton(n, alphabet, seed + i)
                .with_context(|| format!("drawing seed {}", seed + i))?;
            row_stats(&aut, caps)
        })
        .collect::<Result<_>>()?;
    let witness = |row: usize| json!({ "seed": seed + row as u64 });
    let mut out = header(
        &format!("mode=random n={n} alphabet={alphabet} seed={seed} count={count}"),
        caps,
    );
    out.push_str(&format!("seed,{ROW_COLUMNS}\n"));
    for (i, row) in rows.iter().enumerate() {
        out.push_str(&format!("{},{}\n", seed + i as u64, render_stats(row)));
    }
    out.push_str(&aggregate_lines(&rows, witness));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn options(mode: SweepMode) -> SweepOptions {
        SweepOptions {
            mode,
            caps: EngineCaps::default(),
        }
    }

    #[test]
    fn exhaustive_two_states_has_all_sixteen_rows() {
        let out = run_sweep(&options(SweepMode::Exhaustive { n: 2 })).unwrap();
        let body: Vec<&str> = out.lines().filter(|l| !l.starts_with('#')).collect();
        assert_eq!(body.len(), 17);
        assert_eq!(body[0], "f,g,synchronizing,reset_len,m3,m4,m5,max_pair");
        // Constant first letter: resets in one step.
        assert_eq!(body[1], "00,00,true,1,,,,1");
        // Identity and swap only: never collapses, no finite pair.
        assert!(body.contains(&"01,10,false,,,,,"));
        // 12 of the 16 pairs contain a constant letter and synchronize.
        let sync = body.iter().filter(|l| l.contains(",true,")).count();
        assert_eq!(sync, 12);
        assert!(out.contains("\"rows\":16,\"synchronizing\":12"));
        assert!(out.contains("\"max_reset\":{\"value\":1,\"f\":\"00\",\"g\":\"00\"}"));
    }

    #[test]
    fn exhaustive_reruns_are_byte_identical() {
        let opts = options(SweepMode::Exhaustive { n: 3 });
        let first = run_sweep(&opts).unwrap();
        let second = run_sweep(&opts).unwrap();
        assert_eq!(first, second);
        // The identity-only automaton keeps every set intact.
        assert!(first.contains("012,012,false,,inf,,,"));
    }

    #[test]
    fn random_mode_lists_the_requested_seeds() {
        let opts = options(SweepMode::Random {
            n: 6,
            alphabet: 2,
            seed: 40,
            count: 5,
        });
        let out = run_sweep(&opts).unwrap();
        let body: Vec<&str> = out.lines().filter(|l| !l.starts_with('#')).collect();
        assert_eq!(body.len(), 6);
        for (i, line) in body[1..].iter().enumerate() {
            assert!(line.starts_with(&format!("{},", 40 + i)));
        }
        assert!(out.starts_with("# synchro "));
        assert!(out.contains("mode=random n=6 alphabet=2 seed=40 count=5"));
        let rerun = run_sweep(&opts).unwrap();
        assert_eq!(out, rerun);
    }

    #[test]
    fn rejects_oversized_exhaustive_requests() {
        let err = run_sweep(&options(SweepMode::Exhaustive { n: 5 })).unwrap_err();
        assert!(err.to_string().contains("n in 2..=4"));
    }
}
