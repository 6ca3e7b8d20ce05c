//! Pass/fail reports produced by the verification sweeps.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

/// Witnesses kept per report; the failure count is always exact.
pub const MAX_WITNESSES: usize = 25;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub check: String,
    pub checked: u64,
    pub failures: u64,
    pub counterexamples: Vec<String>,
    pub warnings: Vec<String>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(check: impl Into<String>) -> Self {
        Self { check: check.into(), ..Self::default() }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    pub fn fail(&mut self, witness: impl Into<String>) {
        self.failures += 1;
        if self.counterexamples.len() < MAX_WITNESSES {
            self.counterexamples.push(witness.into());
        }
    }

    pub fn warn(&mut self, warning: impl Into<String>) {
        self.warnings.push(warning.into());
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Folds a list of per-item failures, in order, into the report.
    pub fn absorb<I: IntoIterator<Item = String>>(&mut self, witnesses: I) {
        for w in witnesses {
            self.fail(w);
        }
    }

    /// Appends another report's failures and warnings under this one.
    pub fn merge(&mut self, other: Report) {
        self.checked += other.checked;
        for w in other.counterexamples {
            if self.counterexamples.len() < MAX_WITNESSES {
                self.counterexamples.push(format!("[{}] {w}", other.check));
            }
        }
        self.failures += other.failures;
        self.warnings.extend(other.warnings.into_iter().map(|w| format!("[{}] {w}", other.check)));
        self.notes.extend(other.notes);
    }

    /// One line summary: `PASS name (checked N)` or `FAIL ...`.
    pub fn summary(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let mut line = format!("{status} {} (checked {})", self.check, self.checked);
        if self.failures > 0 {
            line.push_str(&format!(", {} failure(s)", self.failures));
        }
        if !self.warnings.is_empty() {
            line.push_str(&format!(", {} warning(s)", self.warnings.len()));
        }
        line
    }

    /// Human-readable rendering with witnesses and warnings.
    pub fn render_text(&self) -> String {
        let mut out = self.summary();
        out.push('\n');
        for c in &self.counterexamples {
            out.push_str(&format!("  counterexample: {c}\n"));
        }
        for w in &self.warnings {
            out.push_str(&format!("  warning: {w}\n"));
        }
        for n in &self.notes {
            out.push_str(&format!("  note: {n}\n"));
        }
        out
    }
}

impl Serialize for Report {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Report", 7)?;
        s.serialize_field("check", &self.check)?;
        s.serialize_field("result", if self.passed() { "pass" } else { "fail" })?;
        s.serialize_field("checked", &self.checked)?;
        s.serialize_field("failures", &self.failures)?;
        s.serialize_field("counterexamples", &self.counterexamples)?;
        s.serialize_field("warnings", &self.warnings)?;
        s.serialize_field("notes", &self.notes)?;
        s.end()
    }
}
