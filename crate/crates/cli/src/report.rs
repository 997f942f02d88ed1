//! The run report: a human table by default, sorted-key JSON with `--json`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct TermRow {
    /// Members of the nested set, as input positions.
    pub nested: Vec<Vec<usize>>,
    /// `φ(M)` in member order, as input positions.
    pub basis: Vec<usize>,
    pub value: String,
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct OracleCheck {
    pub value: String,
    pub agree: bool,
}

#[derive(Serialize, Debug, Clone)]
pub struct RunReport {
    pub command: Vec<String>,
    pub input_digest: String,
    pub totals: BTreeMap<String, Value>,
    pub terms: Vec<TermRow>,
    pub details: BTreeMap<String, Value>,
    pub timing_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleCheck>,
}

impl RunReport {
    pub fn new(command: Vec<String>, input_digest: String) -> Self {
        RunReport {
            command,
            input_digest,
            totals: BTreeMap::new(),
            terms: Vec::new(),
            details: BTreeMap::new(),
            timing_ms: 0.0,
            oracle: None,
        }
    }

    pub fn total(&mut self, key: &str, value: impl Into<Value>) {
        self.totals.insert(key.to_string(), value.into());
    }

    pub fn detail(&mut self, key: &str, value: impl Into<Value>) {
        self.details.insert(key.to_string(), value.into());
    }

    pub fn agrees(&self) -> bool {
        self.oracle.as_ref().is_none_or(|o| o.agree)
    }

    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self).expect("report serializes");
        serde_json::to_string_pretty(&v).expect("value serializes")
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.totals {
            let _ = writeln!(out, "{k}: {}", plain(v));
        }
        for (k, v) in &self.details {
            match v {
                Value::Array(rows) => {
                    let _ = writeln!(out, "{k}:");
                    for r in rows {
                        let _ = writeln!(out, "  {}", plain(r));
                    }
                }
                _ => {
                    let _ = writeln!(out, "{k}: {}", plain(v));
                }
            }
        }
        if !self.terms.is_empty() {
            let cells: Vec<(String, String, &str)> = self
                .terms
                .iter()
                .map(|t| (sets(&t.nested), list(&t.basis), t.value.as_str()))
                .collect();
            let w0 = cells
                .iter()
                .map(|c| c.0.len())
                .max()
                .unwrap_or(0)
                .max("nested set".len());
            let w1 = cells
                .iter()
                .map(|c| c.1.len())
                .max()
                .unwrap_or(0)
                .max("basis".len());
            let _ = writeln!(out, "{:<w0$}  {:<w1$}  term", "nested set", "basis");
            for (a, b, c) in cells {
                let _ = writeln!(out, "{a:<w0$}  {b:<w1$}  {c}");
            }
        }
        if let Some(o) = &self.oracle {
            let verdict = if o.agree { "agrees" } else { "MISMATCH" };
            let _ = writeln!(out, "oracle: {} ({verdict})", o.value);
        }
        out
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn list(v: &[usize]) -> String {
    let items: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

pub fn sets(v: &[Vec<usize>]) -> String {
    v.iter().map(|s| list(s)).collect::<Vec<_>>().join(" ")
}
