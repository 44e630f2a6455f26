//! Machine-readable check reports shared by every module and the CLI.

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

pub const SCHEMA: &str = "mcover-report/1";

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Report {
    pub schema: String,
    pub version: String,
    pub spec: Value,
    pub check: String,
    pub pass: bool,
    pub counterexample: Option<Value>,
    pub data: Map<String, Value>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub subchecks: Vec<Report>,
}

impl Report {
    pub fn new(check: impl Into<String>, spec: Value) -> Self {
        Report {
            schema: SCHEMA.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            spec,
            check: check.into(),
            pass: true,
            counterexample: None,
            data: Map::new(),
            notes: Vec::new(),
            subchecks: Vec::new(),
        }
    }

    pub fn set(&mut self, key: &str, value: impl Serialize) {
        self.data.insert(key.to_string(), serde_json::to_value(value).expect("serializable"));
    }

    pub fn with(mut self, key: &str, value: impl Serialize) -> Self {
        self.set(key, value);
        self
    }

    /// Marks failure; only the first counterexample is kept.
    pub fn fail(&mut self, counterexample: Value) {
        self.pass = false;
        if self.counterexample.is_none() {
            self.counterexample = Some(counterexample);
        }
    }

    /// Records a named condition; on failure stores `detail` under the condition name.
    pub fn require(&mut self, cond: bool, what: &str, detail: Value) -> bool {
        if !cond {
            self.fail(json!({ "failed": what, "detail": detail }));
        }
        cond
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    /// Appends a sub-report; the parent passes only if every child does.
    pub fn push(&mut self, sub: Report) {
        if !sub.pass {
            let ce = json!({ "subcheck": sub.check, "counterexample": sub.counterexample });
            self.fail(ce);
        }
        self.subchecks.push(sub);
    }

    pub fn to_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// `PASS name` / `FAIL name: <counterexample>`, recursing one level.
    pub fn summary_lines(&self) -> Vec<String> {
        let mut out = vec![self.line()];
        for s in &self.subchecks {
            out.push(format!("  {}", s.line()));
        }
        out
    }

    fn line(&self) -> String {
        if self.pass {
            format!("PASS {}", self.check)
        } else {
            let ce = self.counterexample.as_ref().map(|v| v.to_string()).unwrap_or_default();
            format!("FAIL {}: {}", self.check, ce)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_counterexample_wins() {
        let mut r = Report::new("x", json!({}));
        assert!(r.require(true, "a", json!(1)));
        r.require(false, "b", json!(2));
        r.require(false, "c", json!(3));
        assert!(!r.pass);
        assert_eq!(r.counterexample, Some(json!({"failed": "b", "detail": 2})));
    }

    #[test]
    fn children_propagate() {
        let mut parent = Report::new("p", json!(null));
        let mut c = Report::new("c", json!(null));
        c.fail(json!("boom"));
        parent.push(Report::new("ok", json!(null)));
        parent.push(c);
        assert!(!parent.pass);
        assert_eq!(parent.summary_lines().len(), 3);
        let back: Report = serde_json::from_str(&parent.to_pretty()).unwrap();
        assert_eq!(back, parent);
    }
}
