//! Scripted demonstrations: interference contrast, classical positivity
//! and finite-`Σ` convergence of extracted statistics.

mod convergence;
mod interference;
mod positivity;

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub use convergence::{binomial_bound, convergence_study};
pub use interference::{two_slit_demo, W_GRID_STEPS};
pub use positivity::classical_positivity_check;

use crate::report::Verdict;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Observation {
    pub name: String,
    pub value: Value,
}

/// A declared expectation and whether the observations meet it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expectation {
    pub name: String,
    pub holds: bool,
}

/// Result of one experiment. Exact rationals in observations are written
/// as `"n"` or `"n/d"` strings; floating-point quantities as numbers.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub name: String,
    pub inputs: Value,
    pub observations: Vec<Observation>,
    pub expectations: Vec<Expectation>,
    pub verdict: Verdict,
}

impl ExperimentReport {
    fn new(name: &str, inputs: Value) -> Self {
        ExperimentReport {
            name: name.to_string(),
            inputs,
            observations: Vec::new(),
            expectations: Vec::new(),
            verdict: Verdict::Pass,
        }
    }

    fn observe(&mut self, name: impl Into<String>, value: impl Serialize) {
        self.observations.push(Observation {
            name: name.into(),
            value: serde_json::to_value(value).expect("observation serializes"),
        });
    }

    fn expect(&mut self, name: impl Into<String>, holds: bool) {
        self.expectations.push(Expectation {
            name: name.into(),
            holds,
        });
        self.verdict = Verdict::from_bool(self.expectations.iter().all(|e| e.holds));
    }

    pub fn observation(&self, name: &str) -> Option<&Value> {
        self.observations
            .iter()
            .find(|o| o.name == name)
            .map(|o| &o.value)
    }

    pub fn expectation(&self, name: &str) -> Option<bool> {
        self.expectations
            .iter()
            .find(|e| e.name == name)
            .map(|e| e.holds)
    }

    /// Two-column plain-text table.
    pub fn to_text(&self) -> String {
        let mut rows: Vec<(String, String)> = vec![("experiment".into(), self.name.clone())];
        rows.extend(
            self.observations
                .iter()
                .map(|o| (o.name.clone(), render(&o.value))),
        );
        rows.extend(self.expectations.iter().map(|e| {
            let mark = if e.holds { "ok" } else { "FAILED" };
            (format!("expect {}", e.name), mark.to_string())
        }));
        let verdict = if self.verdict.passed() {
            "pass"
        } else {
            "fail"
        };
        rows.push(("verdict".into(), verdict.into()));
        let width = rows
            .iter()
            .map(|(k, _)| k.chars().count())
            .max()
            .unwrap_or(0);
        let mut out = String::new();
        for (k, v) in rows {
            let _ = writeln!(out, "{k:<width$}  {v}");
        }
        out
    }
}

fn render(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => format!(
            "({})",
            items.iter().map(render).collect::<Vec<_>>().join(", ")
        ),
        other => other.to_string(),
    }
}
