//! Run reports: a structured document and an aligned text table.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use crate::closed::{Status, Verdict};
use crate::exact::rational::render;
use crate::exact::{Rational, Window};
use crate::mirror::GWTable;
use crate::series::QSeries;

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    pub config: BTreeMap<String, String>,
    /// Named results in insertion order.
    pub results: Vec<(String, Value)>,
    pub verdicts: Vec<Verdict>,
    /// Degree bounds and windows used.
    pub truncation: Vec<(String, Value)>,
}

pub fn rational_value(r: &Rational) -> Value {
    Value::String(render(r))
}

/// Coefficients of a one-variable series from `q^0`.
pub fn coefficient_list(s: &QSeries<Rational>) -> Value {
    Value::Array(s.coeff_list().iter().map(rational_value).collect())
}

fn exponent_key(e: &[u32]) -> String {
    e.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

/// Nonzero coefficients keyed by `"d1,d2,…"`.
pub fn series_value(s: &QSeries<Rational>) -> Value {
    let mut m = Map::new();
    for (e, c) in s.terms() {
        m.insert(exponent_key(e), rational_value(c));
    }
    Value::Object(m)
}

pub fn table_value(t: &GWTable) -> Value {
    let mut entries = Map::new();
    for (beta, n) in &t.entries {
        entries.insert(exponent_key(beta), rational_value(n));
    }
    let conflicts: Vec<Value> = t.conflicts.iter().map(|(b, a, c)| json!({"class": exponent_key(b), "first": render(a), "second": render(c)})).collect();
    json!({"entries": entries, "conflicts": conflicts})
}

pub fn window_value(w: &Window) -> Value {
    json!({"lambda_depth": w.lambda_depth, "hbar_min": w.hbar_min, "hbar_max": w.hbar_max})
}

impl Report {
    pub fn new(command: &str, config: BTreeMap<String, String>) -> Self {
        Report { command: command.to_string(), config, results: Vec::new(), verdicts: Vec::new(), truncation: Vec::new() }
    }

    pub fn result(&mut self, name: &str, v: Value) {
        self.results.push((name.to_string(), v));
    }

    pub fn verdict(&mut self, v: Verdict) {
        self.verdicts.push(v);
    }

    pub fn truncation(&mut self, name: &str, v: Value) {
        self.truncation.push((name.to_string(), v));
    }

    pub fn all_passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.status != Status::Fail)
    }

    /// 0 when nothing failed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.all_passed() {
            0
        } else {
            1
        }
    }

    pub fn to_value(&self) -> Value {
        let config: Map<String, Value> = self.config.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect();
        let results: Map<String, Value> = self.results.iter().cloned().collect();
        let truncation: Map<String, Value> = self.truncation.iter().cloned().collect();
        let verdicts: Vec<Value> = self
            .verdicts
            .iter()
            .map(|v| {
                json!({
                    "name": v.name,
                    "status": v.status.to_string(),
                    "at": v.at.as_ref().map(|e| exponent_key(e)),
                    "residual": v.residual,
                })
            })
            .collect();
        json!({
            "command": self.command,
            "config": config,
            "results": results,
            "verdicts": verdicts,
            "truncation": truncation,
            "passed": self.all_passed(),
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "localmirror {}", self.command);
        for (k, v) in &self.config {
            let _ = writeln!(out, "  {k} = {v}");
        }
        for (name, v) in &self.results {
            let _ = writeln!(out, "{name}: {}", compact(v));
        }
        if !self.verdicts.is_empty() {
            let w = self.verdicts.iter().map(|v| v.name.chars().count()).max().unwrap_or(0).max(5);
            let _ = writeln!(out, "{:<w$}  {:<7}  {:<10}  residual", "check", "status", "at");
            for v in &self.verdicts {
                let at = v.at.as_ref().map(|e| format!("[{}]", exponent_key(e))).unwrap_or_else(|| "-".into());
                let _ = writeln!(out, "{:<w$}  {:<7}  {:<10}  {}", v.name, v.status.to_string(), at, v.residual);
            }
        }
        let _ = writeln!(out, "{}", if self.all_passed() { "PASS" } else { "FAIL" });
        out
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) => format!("[{}]", a.iter().map(compact).collect::<Vec<_>>().join(", ")),
        Value::Object(m) => format!("{{{}}}", m.iter().map(|(k, v)| format!("{k}: {}", compact(v))).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn sample() -> Report {
        let mut r = Report::new("gw", BTreeMap::from([("command".to_string(), "gw".to_string())]));
        r.result("g", coefficient_list(&QSeries::from_coeffs(2, &[int(0), int(3), rat(-3, 2)])));
        r.verdict(Verdict::pass("a"));
        r
    }

    #[test]
    fn rationals_render_as_fractions() {
        let j = sample().to_json();
        assert!(j.contains("\"3/1\""));
        assert!(j.contains("\"-3/2\""));
        assert!(!j.contains("time"));
    }

    #[test]
    fn deterministic() {
        assert_eq!(sample().to_json(), sample().to_json());
        assert_eq!(sample().to_text(), sample().to_text());
    }

    #[test]
    fn failure_sets_exit_code() {
        let mut r = sample();
        assert_eq!(r.exit_code(), 0);
        r.verdict(Verdict::skipped("s", "n/a"));
        assert_eq!(r.exit_code(), 0);
        r.verdict(Verdict::new("b", false, Some(vec![1]), "1/2".into()));
        assert_eq!(r.exit_code(), 1);
        assert!(r.to_text().contains("FAIL"));
    }
}
