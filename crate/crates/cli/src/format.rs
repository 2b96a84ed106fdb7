//! JSON automaton files.
//!
//! ```json
//! {
//!   "name": "cerny-4",
//!   "n": 4,
//!   "letters": { "f": [1, 2, 3, 0], "g": [1, 1, 2, 3] }
//! }
//! ```
//!
//! Row entries are 0-indexed images. `letters` is an object when the
//! letters are named (object order is the letter order) and an array of
//! rows otherwise. `name` is optional. The writer is canonical: fixed key
//! order, two-space indentation, a trailing newline, letters in index
//! order, so the same automaton always serializes to the same bytes.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde_json::{json, Map, Value};
use synchro_core::Automaton;

pub fn read_automaton(path: &Path) -> Result<Automaton> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading automaton file {}", path.display()))?;
    parse_automaton(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn parse_automaton(text: &str) -> Result<Automaton> {
    let value: Value = serde_json::from_str(text).context("automaton file is not valid JSON")?;
    let obj = value
        .as_object()
        .context("automaton file must be a JSON object")?;
    for key in obj.keys() {
        if key != "name" && key != "n" && key != "letters" {
            bail!("unknown key {key:?} (expected name, n, letters)");
        }
    }
    let n = obj
        .get("n")
        .and_then(Value::as_u64)
        .context("missing or non-integer \"n\"")? as usize;
    let letters = obj.get("letters").context("missing \"letters\"")?;

    let mut names: Option<Vec<String>> = None;
    let rows: Vec<Vec<u32>> = match letters {
        Value::Array(items) => items
            .iter()
            .map(parse_row)
            .collect::<Result<_>>()?,
        Value::Object(map) => {
            // serde_json preserves object order, so document order is
            // letter-index order.
            names = Some(map.keys().cloned().collect());
            map.values().map(parse_row).collect::<Result<_>>()?
        }
        _ => bail!("\"letters\" must be an object or an array"),
    };

    let mut aut = Automaton::new(n, rows)?;
    if let Some(names) = names {
        aut = aut.with_letter_names(names)?;
    }
    if let Some(name) = obj.get("name") {
        let name = name.as_str().context("\"name\" must be a string")?;
        aut = aut.with_name(name);
    }
    Ok(aut)
}

fn parse_row(value: &Value) -> Result<Vec<u32>> {
    let items = value.as_array().context("letter row must be an array")?;
    items
        .iter()
        .map(|v| {
            v.as_u64()
                .and_then(|x| u32::try_from(x).ok())
                .context("row entries must be small nonnegative integers")
        })
        .collect()
}

/// Canonical JSON text for an automaton; identical automata yield
/// identical bytes.
pub fn automaton_to_json(aut: &Automaton) -> String {
    let mut obj = Map::new();
    if let Some(name) = aut.name() {
        obj.insert("name".into(), json!(name));
    }
    obj.insert("n".into(), json!(aut.state_count()));
    let letters: Value = match aut.letter_names() {
        Some(names) => {
            let mut map = Map::new();
            for (i, name) in names.iter().enumerate() {
                map.insert(name.clone(), json!(aut.letter_row(i)));
            }
            Value::Object(map)
        }
        None => json!((0..aut.alphabet_size())
            .map(|i| aut.letter_row(i))
            .collect::<Vec<_>>()),
    };
    obj.insert("letters".into(), letters);
    let mut text = serde_json::to_string_pretty(&Value::Object(obj)).expect("serializable");
    text.push('\n');
    text
}

pub fn write_automaton(path: &Path, aut: &Automaton) -> Result<()> {
    fs::write(path, automaton_to_json(aut))
        .with_context(|| format!("writing automaton file {}", path.display()))
}
