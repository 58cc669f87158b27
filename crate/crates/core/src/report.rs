//! Verification reports: one row per checked identity.

use std::time::Duration;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    /// Stable identifier, e.g. `supplement.p_prime_square`.
    pub id: String,
    /// The identity that was checked, written as a formula.
    pub anchor: String,
    pub passed: bool,
    /// Empty on success; a description of the first counterexample otherwise.
    pub counterexample: String,
    /// Supplementary observation recorded alongside the verdict.
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub note: String,
}

impl Check {
    pub fn pass(id: impl Into<String>, anchor: impl Into<String>) -> Self {
        Self { id: id.into(), anchor: anchor.into(), passed: true, counterexample: String::new(), note: String::new() }
    }

    pub fn fail(id: impl Into<String>, anchor: impl Into<String>, counterexample: impl Into<String>) -> Self {
        let mut c = counterexample.into();
        if c.is_empty() {
            c.push_str("(no detail)");
        }
        Self { id: id.into(), anchor: anchor.into(), passed: false, counterexample: c, note: String::new() }
    }

    pub fn from_result(id: impl Into<String>, anchor: impl Into<String>, r: std::result::Result<(), String>) -> Self {
        match r {
            Ok(()) => Self::pass(id, anchor),
            Err(e) => Self::fail(id, anchor, e),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }

    pub fn expect_eq<T: PartialEq + std::fmt::Debug>(
        id: impl Into<String>,
        anchor: impl Into<String>,
        got: &T,
        want: &T,
    ) -> Self {
        if got == want {
            Self::pass(id, anchor)
        } else {
            Self::fail(id, anchor, format!("got {got:?}, expected {want:?}"))
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckList {
    pub checks: Vec<Check>,
}

impl CheckList {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: CheckList) {
        self.checks.extend(other.checks);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    /// Parameter tuple as ordered `(name, value)` pairs.
    pub params: Vec<(String, String)>,
    pub checks: Vec<Check>,
    /// Wall-clock time in milliseconds. Excluded from deterministic output.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elapsed_ms: Option<u128>,
}

impl VerificationReport {
    pub fn new(suite: &str, params: Vec<(String, String)>, checks: CheckList) -> Self {
        Self { suite: suite.to_string(), params, checks: checks.checks, elapsed_ms: None }
    }

    pub fn with_timing(mut self, d: Duration) -> Self {
        self.elapsed_ms = Some(d.as_millis());
        self
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn param_string(&self) -> String {
        self.params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")
    }
}

#[macro_export]
macro_rules! params {
    ($($k:ident = $v:expr),* $(,)?) => {
        vec![$((stringify!($k).to_string(), $v.to_string())),*]
    };
}
