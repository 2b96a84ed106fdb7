//! Structured verification results and their table / JSON renderings.

use std::time::{Duration, Instant};

use serde::Serialize;
use serde_json::{json, Value};
use synchro_core::EngineCaps;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    /// The computed value satisfies the claimed relation.
    Pass,
    /// It does not.
    Fail,
    /// No relation was claimed; the value is archived for reference.
    Recorded,
}

/// One verified claim: what was expected, what was computed, and whether
/// the expectation held. `expected` always states the relation the verdict
/// was decided by.
#[derive(Clone, Debug, Serialize)]
pub struct ClaimResult {
    pub claim_id: String,
    pub statement: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub expected: String,
    pub computed: String,
    pub verdict: Verdict,
    pub runtime_ms: u128,
}

impl ClaimResult {
    /// A checked claim: verdict is `Pass` exactly when `ok` (the evaluated
    /// relation between expected and computed) is true.
    pub fn checked(
        claim_id: &str,
        statement: impl Into<String>,
        expected: impl Into<String>,
        computed: impl Into<String>,
        ok: bool,
        runtime: Duration,
    ) -> ClaimResult {
        ClaimResult {
            claim_id: claim_id.to_string(),
            statement: statement.into(),
            n: None,
            k: None,
            seed: None,
            expected: expected.into(),
            computed: computed.into(),
            verdict: if ok { Verdict::Pass } else { Verdict::Fail },
            runtime_ms: runtime.as_millis(),
        }
    }

    /// An archival claim: nothing asserted, value kept for reference.
    pub fn recorded(
        claim_id: &str,
        statement: impl Into<String>,
        computed: impl Into<String>,
        runtime: Duration,
    ) -> ClaimResult {
        ClaimResult {
            claim_id: claim_id.to_string(),
            statement: statement.into(),
            n: None,
            k: None,
            seed: None,
            expected: "recorded".to_string(),
            computed: computed.into(),
            verdict: Verdict::Recorded,
            runtime_ms: runtime.as_millis(),
        }
    }

    pub fn with_n(mut self, n: u64) -> Self {
        self.n = Some(n);
        self
    }

    pub fn with_k(mut self, k: u64) -> Self {
        self.k = Some(k);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn failed(&self) -> bool {
        self.verdict == Verdict::Fail
    }
}

/// Run `f` and return its result with the wall-clock time it took.
pub fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let value = f();
    (value, start.elapsed())
}

/// Fixed-width summary table, one row per claim, deterministic order.
pub fn render_table(results: &[ClaimResult]) -> String {
    let mut out = String::new();
    let id_w = results
        .iter()
        .map(|r| r.claim_id.len())
        .chain(["claim".len()])
        .max()
        .unwrap();
    let exp_w = results
        .iter()
        .map(|r| r.expected.len())
        .chain(["expected".len()])
        .max()
        .unwrap()
        .min(36);
    let comp_w = results
        .iter()
        .map(|r| r.computed.len())
        .chain(["computed".len()])
        .max()
        .unwrap()
        .min(36);
    let line = |id: &str, n: &str, k: &str, exp: &str, comp: &str, verdict: &str, ms: &str| {
        format!(
            "{id:<id_w$}  {n:>4} {k:>3}  {exp:<exp_w$}  {comp:<comp_w$}  {verdict:<8}  {ms:>7}\n"
        )
    };
    out.push_str(&line("claim", "n", "k", "expected", "computed", "verdict", "ms"));
    for r in results {
        let n = r.n.map_or(String::from("-"), |v| v.to_string());
        let k = r.k.map_or(String::from("-"), |v| v.to_string());
        let verdict = match r.verdict {
            Verdict::Pass => "pass",
            Verdict::Fail => "FAIL",
            Verdict::Recorded => "recorded",
        };
        out.push_str(&line(
            &r.claim_id,
            &n,
            &k,
            &truncate(&r.expected, exp_w),
            &truncate(&r.computed, comp_w),
            verdict,
            &r.runtime_ms.to_string(),
        ));
    }
    let passed = results.iter().filter(|r| r.verdict == Verdict::Pass).count();
    let failed = results.iter().filter(|r| r.verdict == Verdict::Fail).count();
    let recorded = results.iter().filter(|r| r.verdict == Verdict::Recorded).count();
    out.push_str(&format!(
        "{} claims: {passed} passed, {failed} failed, {recorded} recorded\n",
        results.len()
    ));
    out
}

fn truncate(text: &str, width: usize) -> String {
    if text.len() <= width {
        text.to_string()
    } else {
        let mut s: String = text.chars().take(width.saturating_sub(1)).collect();
        s.push('…');
        s
    }
}

/// JSON report envelope embedding the tool version and engine caps.
pub fn report_json(results: &[ClaimResult], caps: &EngineCaps, seed: Option<u64>) -> Value {
    json!({
        "tool_version": env!("CARGO_PKG_VERSION"),
        "caps": caps_json(caps),
        "seed": seed,
        "claims": results,
    })
}

pub fn caps_json(caps: &EngineCaps) -> Value {
    json!({
        "full_lattice_max_n": caps.full_lattice_max_n,
        "bounded_node_budget": caps.bounded_node_budget,
        "word_bfs_budget": caps.word_bfs_budget,
    })
}
