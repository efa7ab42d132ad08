//! Pass/fail records shared by all verification routines.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Coverage {
    Exhaustive,
    Sampled,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    /// Basis indices (or sample number) of the failing tuple.
    pub tuple: Vec<usize>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub id: String,
    pub passed: bool,
    pub cases: u64,
    pub coverage: Coverage,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Check {
    pub fn pass(id: impl Into<String>, cases: u64, coverage: Coverage) -> Self {
        Check { id: id.into(), passed: true, cases, coverage, witness: None }
    }

    pub fn fail(id: impl Into<String>, cases: u64, coverage: Coverage, tuple: Vec<usize>, detail: impl Into<String>) -> Self {
        Check { id: id.into(), passed: false, cases, coverage, witness: Some(Witness { tuple, detail: detail.into() }) }
    }

    pub fn from_bool(id: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        if ok {
            Check::pass(id, 1, Coverage::Exhaustive)
        } else {
            Check::fail(id, 1, Coverage::Exhaustive, vec![], detail)
        }
    }
}

/// A group of checks; passes iff all members pass.
#[derive(Debug, Clone, PartialEq, Serialize, Default)]
pub struct CheckReport {
    pub checks: Vec<Check>,
}

impl CheckReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, o: CheckReport) {
        self.checks.extend(o.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn get(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }
}
