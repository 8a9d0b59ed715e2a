use std::fmt;

/// Outcome of one named check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// A list of axiom checks; failures carry the offending basis element.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub subject: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(subject: impl Into<String>) -> Self {
        Report {
            subject: subject.into(),
            checks: Vec::new(),
        }
    }

    pub fn record(&mut self, name: impl Into<String>, outcome: Result<(), String>) {
        let (passed, detail) = match outcome {
            Ok(()) => (true, String::new()),
            Err(e) => (false, e),
        };
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail,
        });
    }

    pub fn merge(&mut self, other: Report) {
        for c in other.checks {
            self.checks.push(Check {
                name: format!("{}: {}", other.subject, c.name),
                ..c
            });
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn failed(&self, name: &str) -> bool {
        self.checks.iter().any(|c| !c.passed && c.name == name)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.subject)?;
        for c in &self.checks {
            if c.passed {
                writeln!(f, "  ok   {}", c.name)?;
            } else {
                writeln!(f, "  FAIL {}: {}", c.name, c.detail)?;
            }
        }
        Ok(())
    }
}

/// Runs a check whose construction may itself fail; construction errors are
/// reported as failures.
pub(crate) fn attempt(
    f: impl FnOnce() -> crate::error::Result<Result<(), String>>,
) -> Result<(), String> {
    f().unwrap_or_else(|e| Err(e.to_string()))
}
