//! Structured reports: a deterministic JSON document and a fixed-width table.
//!
//! The schema is described in `docs/report-schema.md`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use qel_core::citation::{self, Citation};
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA: &str = "qel-report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Ok,
    Infeasible,
    Mismatch,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Ok => 0,
            Verdict::Infeasible | Verdict::Mismatch => 1,
        }
    }

    /// The worse of two verdicts.
    pub fn and(self, other: Verdict) -> Verdict {
        if self == Verdict::Ok {
            other
        } else {
            self
        }
    }
}

/// One reported value and the rules or computations it rests on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Claim {
    pub key: String,
    pub value: Value,
    /// Citation anchors; `COMPUTED` for values produced by the engines.
    pub basis: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CitationEntry {
    pub anchor: String,
    pub statement: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub seed: Option<u64>,
    pub verdict: Verdict,
    pub results: Vec<Claim>,
    pub citations: Vec<CitationEntry>,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            schema: SCHEMA.to_string(),
            command: command.to_string(),
            inputs: BTreeMap::new(),
            seed: None,
            verdict: Verdict::Ok,
            results: Vec::new(),
            citations: Vec::new(),
            warnings: Vec::new(),
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    /// Adds a claim; an empty `basis` is recorded as `COMPUTED`.
    pub fn claim(&mut self, key: impl Into<String>, value: impl Into<Value>, basis: &[Citation]) -> &mut Self {
        let basis = if basis.is_empty() { &[citation::COMPUTED][..] } else { basis };
        for c in basis {
            self.cite(*c);
        }
        self.results.push(Claim {
            key: key.into(),
            value: value.into(),
            basis: basis.iter().map(|c| c.anchor.to_string()).collect(),
        });
        self
    }

    pub fn cite(&mut self, c: Citation) {
        let entry = CitationEntry { anchor: c.anchor.to_string(), statement: c.statement.to_string() };
        if let Err(pos) = self.citations.binary_search(&entry) {
            self.citations.insert(pos, entry);
        }
    }

    pub fn warn(&mut self, w: impl Into<String>) {
        self.warnings.push(w.into());
    }

    pub fn downgrade(&mut self, v: Verdict) {
        self.verdict = self.verdict.and(v);
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        if !self.inputs.is_empty() {
            let inputs: Vec<String> = self.inputs.iter().map(|(k, v)| format!("{k}={}", compact(v))).collect();
            let _ = writeln!(out, "inputs:  {}", inputs.join(" "));
        }
        if let Some(seed) = self.seed {
            let _ = writeln!(out, "seed:    {seed}");
        }
        let rows: Vec<[String; 3]> =
            self.results.iter().map(|c| [c.key.clone(), compact(&c.value), c.basis.join(",")]).collect();
        let header = ["KEY".to_string(), "VALUE".to_string(), "BASIS".to_string()];
        let width = |i: usize| rows.iter().chain([&header]).map(|r| r[i].chars().count()).max().unwrap_or(0);
        let (w0, w1) = (width(0), width(1));
        out.push('\n');
        for r in [&header].into_iter().chain(&rows) {
            let line = format!("{:<w0$}  {:<w1$}  {}", r[0], r[1], r[2]);
            let _ = writeln!(out, "{}", line.trim_end());
        }
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        let _ = writeln!(out, "\nverdict: {}", compact(&serde_json::to_value(self.verdict).expect("enum")));
        out
    }
}

/// Values as shown in tables: strings bare, everything else as compact JSON.
pub fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
