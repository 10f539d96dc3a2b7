//! Run reports written to standard error by the command-line tool.

use std::fmt;

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Outcome details; on failure this carries the error that caused it.
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }

    pub fn pass(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Self::new(name, true, detail)
    }

    pub fn fail(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Self::new(name, false, detail)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub inputs: Vec<InputDigest>,
    pub checks: Vec<Check>,
    pub outputs: Vec<String>,
    pub elapsed_ms: u128,
}

impl RunReport {
    pub fn new(command: Vec<String>) -> Self {
        RunReport {
            command,
            ..Default::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "command: {}", self.command.join(" "))?;
        for input in &self.inputs {
            writeln!(f, "input:   {} sha256={}", input.path, input.sha256)?;
        }
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            if c.detail.is_empty() {
                writeln!(f, "{}  {}", tag, c.name)?;
            } else {
                writeln!(f, "{}  {}: {}", tag, c.name, c.detail)?;
            }
        }
        for out in &self.outputs {
            writeln!(f, "output:  {}", out)?;
        }
        writeln!(f, "time:    {} ms", self.elapsed_ms)?;
        let passed = self.checks.iter().filter(|c| c.passed).count();
        write!(
            f,
            "result:  {} ({}/{} checks passed)",
            if self.passed() { "PASS" } else { "FAIL" },
            passed,
            self.checks.len()
        )
    }
}
