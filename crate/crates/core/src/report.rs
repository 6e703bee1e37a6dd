use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn passed(self) -> bool {
        self == Verdict::Pass
    }
}

/// Outcome of checking one identity over a batch of samples. `witness`
/// holds the first counterexample, serialized by the caller.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PropertyCheck {
    pub property: String,
    pub samples: usize,
    pub passed: bool,
    pub witness: Option<serde_json::Value>,
}

impl PropertyCheck {
    /// Runs `holds` over `samples` and keeps the first failing one.
    pub fn run<T: Serialize>(
        property: &str,
        samples: &[T],
        mut holds: impl FnMut(&T) -> bool,
    ) -> PropertyCheck {
        let failure = samples.iter().find(|s| !holds(s));
        PropertyCheck {
            property: property.to_string(),
            samples: samples.len(),
            passed: failure.is_none(),
            witness: failure.map(|w| serde_json::to_value(w).expect("witness serializes")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub seed: u64,
    pub trials: usize,
    pub checks: Vec<PropertyCheck>,
    pub verdict: Verdict,
}

impl CheckReport {
    pub fn new(name: &str, seed: u64, trials: usize, checks: Vec<PropertyCheck>) -> Self {
        let verdict = Verdict::from_bool(checks.iter().all(|c| c.passed));
        CheckReport {
            name: name.to_string(),
            seed,
            trials,
            checks,
            verdict,
        }
    }

    pub fn check(&self, property: &str) -> Option<&PropertyCheck> {
        self.checks.iter().find(|c| c.property == property)
    }
}
