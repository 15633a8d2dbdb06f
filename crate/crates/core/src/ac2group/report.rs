use std::fmt;

use serde::Serialize;

use crate::config::MAX_TUPLE_SWEEP;
use crate::{Error, Result};

/// Outcome of one named check. `violation` holds the first failing tuple in
/// lexicographic order, already rendered with object or morphism labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<String>,
}

impl CheckResult {
    pub fn from_violation(name: &str, violation: Option<String>) -> Self {
        CheckResult { name: name.to_string(), passed: violation.is_none(), violation }
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.violation {
            None => write!(f, "PASS {}", self.name),
            Some(t) => write!(f, "FAIL {} at {}", self.name, t),
        }
    }
}

/// Line-oriented verification report.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn push(&mut self, check: CheckResult) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn lines(&self) -> Vec<String> {
        self.checks.iter().map(|c| c.to_string()).collect()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

/// First tuple in `[0, n)^arity` (lexicographic) where `holds` is false.
pub fn first_violation(n: usize, arity: usize, mut holds: impl FnMut(&[usize]) -> bool) -> Result<Option<Vec<usize>>> {
    let count = (n as u64).checked_pow(arity as u32);
    if count.is_none_or(|c| c > MAX_TUPLE_SWEEP) {
        return Err(Error::cap(format!("sweep over {n}^{arity} tuples exceeds the tuple cap {MAX_TUPLE_SWEEP}")));
    }
    let mut t = vec![0usize; arity];
    loop {
        if !holds(&t) {
            return Ok(Some(t));
        }
        if !crate::cohomology::odometer(&mut t, n) {
            return Ok(None);
        }
    }
}
