//! Verification reports: `{ "suite", "group", "checks": [{ "id", "maxDeviation", "pass" }] }`.

use serde::{Deserialize, Serialize};

/// Default tolerance for identities that hold exactly on integer basis data.
pub const EXACT_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Check {
    pub id: String,
    #[serde(rename = "maxDeviation")]
    pub max_deviation: f64,
    pub pass: bool,
}

impl Check {
    /// Passes iff `max_deviation <= tolerance` (NaN fails).
    pub fn new(id: &str, max_deviation: f64, tolerance: f64) -> Self {
        Self {
            id: id.to_string(),
            max_deviation,
            pass: max_deviation <= tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub suite: String,
    pub group: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(suite: &str, group: &str) -> Self {
        Self {
            suite: suite.to_string(),
            group: group.to_string(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, id: &str, max_deviation: f64, tolerance: f64) {
        self.checks.push(Check::new(id, max_deviation, tolerance));
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

/// Running maximum that keeps NaN sticky, so a NaN deviation never passes.
#[derive(Debug, Clone, Copy, Default)]
pub struct MaxDeviation(f64);

impl MaxDeviation {
    pub fn record(&mut self, x: f64) {
        if x.is_nan() || self.0.is_nan() {
            self.0 = f64::NAN;
        } else {
            self.0 = self.0.max(x);
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}
