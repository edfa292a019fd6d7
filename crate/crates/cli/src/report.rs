use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA: &str = "latcover.report.v1";

#[derive(Debug, Clone, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Output of one subcommand. Field order is the JSON key order.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    pub passed: bool,
    pub checks: Vec<CheckLine>,
    pub data: Value,
    /// Extra lines for text output; the same facts live in `data`.
    #[serde(skip)]
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            schema: SCHEMA,
            command: command.to_string(),
            passed: true,
            checks: Vec::new(),
            data: Value::Object(Default::default()),
            notes: Vec::new(),
        }
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.passed &= passed;
        self.checks.push(CheckLine {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn note(&mut self, line: impl Into<String>) {
        self.notes.push(line.into());
    }

    pub fn set(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("serializable report data");
        if let Value::Object(m) = &mut self.data {
            m.insert(key.to_string(), v);
        }
    }

    /// Folds another report in, prefixing its check names.
    pub fn absorb(&mut self, other: Report) {
        for c in other.checks {
            self.check(format!("{}: {}", other.command, c.name), c.passed, c.detail);
        }
        self.notes.extend(other.notes);
        self.passed &= other.passed;
        self.set(&other.command, other.data);
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for n in &self.notes {
            let _ = writeln!(out, "{n}");
        }
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            if c.detail.is_empty() {
                let _ = writeln!(out, "{tag} {}", c.name);
            } else {
                let _ = writeln!(out, "{tag} {} ({})", c.name, c.detail);
            }
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        let _ = writeln!(
            out,
            "{}: {} checks, {} failed",
            self.command,
            self.checks.len(),
            failed
        );
        out
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable report") + "\n"
    }
}
