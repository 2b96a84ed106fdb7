//! Whole-automaton analysis: synchronization verdict, reset word, rank
//! profile, minimal closed sets, and per-size weight extremes.

use anyhow::Result;
use serde_json::{json, Value};

use synchro_core::lattice::{
    self, greedy_reset_word, min_rank_profile, minimal_closed_sets, shortest_reset_word,
};
use synchro_core::{Automaton, EngineCaps, WeightTable};

/// What to compute and under which resource limits.
#[derive(Debug, Clone)]
pub struct AnalyzeOptions {
    /// Subset sizes whose weight extremes to report. Sizes outside `2..=n`
    /// are skipped silently.
    pub ks: Vec<usize>,
    /// Word lengths covered by the rank profile. Defaults to the reset
    /// length when synchronizing, `2n` otherwise.
    pub profile_len: Option<usize>,
    pub caps: EngineCaps,
}

impl Default for AnalyzeOptions {
    fn default() -> AnalyzeOptions {
        AnalyzeOptions {
            ks: vec![2, 3, 4, 5],
            profile_len: None,
            caps: EngineCaps::default(),
        }
    }
}

fn caps_json(caps: &EngineCaps) -> Value {
    json!({
        "full_lattice_max_n": caps.full_lattice_max_n,
        "bounded_node_budget": caps.bounded_node_budget,
        "word_bfs_budget": caps.word_bfs_budget,
    })
}

fn letter_labels(aut: &Automaton) -> Vec<String> {
    (0..aut.alphabet_size())
        .map(|a| {
            aut.letter_name(a)
                .map(str::to_string)
                .unwrap_or_else(|| a.to_string())
        })
        .collect()
}

/// One size layer: extremes of the weight over all size-`k` subsets.
fn layer_json(aut: &Automaton, table: &WeightTable, engine: &str, k: usize) -> Value {
    let mut total: u64 = 0;
    let mut finite: u64 = 0;
    for (_, w) in table.iter_layer(k) {
        total += 1;
        if w.is_finite() {
            finite += 1;
        }
    }
    let (min_w, min_set) = table
        .rendezvous_min(k)
        .expect("layer k is covered by construction");
    let min = json!({
        "weight": min_w.value(),
        "set": min_set.to_string(),
        "word": table
            .witness_word(aut, min_set)
            .map(|w| aut.format_word(&w)),
    });
    let max = table
        .rendezvous_max(k)
        .expect("layer k is covered by construction")
        .map(|(w, set)| {
            json!({
                "weight": w,
                "set": set.to_string(),
                "word": table
                    .witness_word(aut, set)
                    .map(|wd| aut.format_word(&wd)),
            })
        })
        .unwrap_or(Value::Null);
    json!({
        "k": k,
        "engine": engine,
        "total": total,
        "collapsible": finite,
        "synchronizable": finite == total,
        "min": min,
        "max": max,
    })
}

/// Full report as a JSON object whose keys stay in insertion order.
///
/// Infinite weights render as `null`. A layer that exceeds the node budget
/// is reported with an `error` field instead of aborting the analysis, and
/// likewise the reset word and rank profile degrade to `null` plus a note
/// when the image search exceeds its budget.
pub fn analyze_json(aut: &Automaton, opts: &AnalyzeOptions) -> Value {
    let n = aut.state_count();
    let closed = minimal_closed_sets(aut);
    let synchronizing = lattice::is_synchronizing(aut);

    let mut report = json!({
        "tool_version": env!("CARGO_PKG_VERSION"),
        "caps": caps_json(&opts.caps),
        "name": aut.name(),
        "n": n,
        "alphabet": aut.alphabet_size(),
        "letters": letter_labels(aut),
        "synchronizing": synchronizing,
        "minimal_closed_sets": closed
            .minimal_closed
            .iter()
            .zip(&closed.strongly_connected)
            .map(|(set, &sc)| json!({
                "set": set.to_string(),
                "size": set.len(),
                "strongly_connected": sc,
            }))
            .collect::<Vec<_>>(),
    });
    let obj = report.as_object_mut().expect("report is an object");

    let mut reset_len: Option<usize> = None;
    match shortest_reset_word(aut, &opts.caps) {
        Ok(Some(word)) => {
            reset_len = Some(word.len());
            obj.insert(
                "reset".into(),
                json!({ "length": word.len(), "word": aut.format_word(&word) }),
            );
        }
        Ok(None) => {
            obj.insert("reset".into(), Value::Null);
        }
        Err(e) => {
            obj.insert("reset".into(), Value::Null);
            obj.insert("reset_note".into(), json!(e.to_string()));
        }
    }

    match greedy_reset_word(aut) {
        Ok(word) => {
            obj.insert("greedy_reset_length".into(), json!(word.len()));
        }
        Err(_) => {
            obj.insert("greedy_reset_length".into(), Value::Null);
        }
    }

    let profile_len = opts
        .profile_len
        .or(reset_len)
        .unwrap_or(2 * n);
    match min_rank_profile(aut, profile_len, &opts.caps) {
        Ok(profile) => {
            obj.insert("rank_profile".into(), json!(profile.ranks()));
        }
        Err(e) => {
            obj.insert("rank_profile".into(), Value::Null);
            obj.insert("rank_profile_note".into(), json!(e.to_string()));
        }
    }

    let mut ks: Vec<usize> = opts.ks.iter().copied().filter(|&k| k >= 2 && k <= n).collect();
    ks.sort_unstable();
    ks.dedup();
    let full_table = if n <= opts.caps.full_lattice_max_n {
        match WeightTable::full(aut, &opts.caps) {
            Ok(t) => Some(t),
            Err(_) => None,
        }
    } else {
        None
    };
    let mut layers = Vec::with_capacity(ks.len());
    for k in ks {
        match &full_table {
            Some(table) => layers.push(layer_json(aut, table, "full", k)),
            None => match WeightTable::bounded(aut, k, &opts.caps) {
                Ok(table) => layers.push(layer_json(aut, &table, "bounded", k)),
                Err(e) => layers.push(json!({
                    "k": k,
                    "engine": "bounded",
                    "error": e.to_string(),
                })),
            },
        }
    }
    obj.insert("layers".into(), json!(layers));

    report
}

/// The same report flattened to CSV: scalars as `#` comment lines, then one
/// row per size layer.
pub fn analyze_csv(aut: &Automaton, opts: &AnalyzeOptions) -> Result<String> {
    let report = analyze_json(aut, opts);
    let mut out = String::new();
    let scalar = |v: &Value| -> String {
        match v {
            Value::Null => "".to_string(),
            Value::String(s) => s.clone(),
            other => other.to_string(),
        }
    };
    out.push_str(&format!(
        "# synchro {} analyze\n",
        report["tool_version"].as_str().unwrap_or("?")
    ));
    for key in [
        "name",
        "n",
        "alphabet",
        "synchronizing",
        "greedy_reset_length",
    ] {
        out.push_str(&format!("# {key}: {}\n", scalar(&report[key])));
    }
    match &report["reset"] {
        Value::Null => out.push_str("# reset_length: \n# reset_word: \n"),
        reset => out.push_str(&format!(
            "# reset_length: {}\n# reset_word: {}\n",
            scalar(&reset["length"]),
            scalar(&reset["word"])
        )),
    }
    if let Some(sets) = report["minimal_closed_sets"].as_array() {
        let rendered: Vec<String> = sets.iter().map(|s| scalar(&s["set"])).collect();
        out.push_str(&format!("# minimal_closed_sets: {}\n", rendered.join(" ")));
    }
    if let Some(profile) = report["rank_profile"].as_array() {
        let rendered: Vec<String> = profile.iter().map(scalar).collect();
        out.push_str(&format!("# rank_profile: {}\n", rendered.join(" ")));
    }

    let mut wtr = csv::Writer::from_writer(Vec::new());
    wtr.write_record([
        "k",
        "engine",
        "total",
        "collapsible",
        "synchronizable",
        "min_weight",
        "min_set",
        "min_word",
        "max_weight",
        "max_set",
        "max_word",
    ])?;
    for layer in report["layers"].as_array().into_iter().flatten() {
        if let Some(err) = layer.get("error") {
            wtr.write_record([
                scalar(&layer["k"]),
                scalar(&layer["engine"]),
                format!("error: {}", scalar(err)),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
            ])?;
            continue;
        }
        wtr.write_record([
            scalar(&layer["k"]),
            scalar(&layer["engine"]),
            scalar(&layer["total"]),
            scalar(&layer["collapsible"]),
            scalar(&layer["synchronizable"]),
            scalar(&layer["min"]["weight"]),
            scalar(&layer["min"]["set"]),
            scalar(&layer["min"]["word"]),
            scalar(&layer["max"]["weight"]),
            scalar(&layer["max"]["set"]),
            scalar(&layer["max"]["word"]),
        ])?;
    }
    out.push_str(&String::from_utf8(wtr.into_inner()?)?);
    Ok(out)
}
