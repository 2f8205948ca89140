//! Verification reports: a machine-readable JSON certificate with a fixed
//! key order, and a human-readable table.

use serde::Serialize;

/// Outcome of one check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    /// The check holds.
    Pass,
    /// The check is violated.
    Fail,
}

/// One named check with its evidence.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    /// Short identifier of the check.
    pub name: String,
    /// Pass or fail.
    pub status: Status,
    /// What was verified (counts, bounds, values).
    pub detail: String,
    /// The first offending graph or stratum face, on failure.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

/// A computed value attached to a report (for example a per-graph partition
/// function value).
#[derive(Clone, Debug, Serialize)]
pub struct Entry {
    /// The object the value belongs to.
    pub item: String,
    /// The value, as exact text.
    pub value: String,
}

/// The certificate printed by every subcommand.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    /// The subcommand and its effective arguments.
    pub command: String,
    /// The engine version.
    pub engine_version: String,
    /// True iff every check passed.
    pub passed: bool,
    /// The individual checks.
    pub checks: Vec<Check>,
    /// Computed values.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub entries: Vec<Entry>,
    /// Wall-clock time in milliseconds (only with `--timing`, so that
    /// reports are byte-identical across runs by default).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl VerificationReport {
    /// An empty report for `command`.
    pub fn new(command: impl Into<String>) -> Self {
        VerificationReport {
            command: command.into(),
            engine_version: env!("CARGO_PKG_VERSION").to_string(),
            passed: true,
            checks: Vec::new(),
            entries: Vec::new(),
            timing_ms: None,
        }
    }

    /// Records a check.
    pub fn check(&mut self, name: &str, ok: bool, detail: impl Into<String>, counterexample: Option<String>) {
        self.passed &= ok;
        self.checks.push(Check {
            name: name.to_string(),
            status: if ok { Status::Pass } else { Status::Fail },
            detail: detail.into(),
            counterexample: if ok { None } else { counterexample },
        });
    }

    /// Records a computed value.
    pub fn entry(&mut self, item: impl Into<String>, value: impl Into<String>) {
        self.entries.push(Entry { item: item.into(), value: value.into() });
    }

    /// Pretty-printed JSON; keys appear in declaration order.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    /// A fixed-width table of the checks, followed by the entries.
    pub fn to_table(&self) -> String {
        let name_w = self.checks.iter().map(|c| c.name.chars().count()).max().unwrap_or(0).max(5);
        let mut out = format!("{}  (engine {})\n", self.command, self.engine_version);
        out.push_str(&format!("{:<name_w$}  {:<6}  {}\n", "check", "status", "detail"));
        out.push_str(&format!("{}  {}  {}\n", "-".repeat(name_w), "-".repeat(6), "-".repeat(40)));
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            };
            out.push_str(&format!("{:<name_w$}  {:<6}  {}\n", c.name, status, c.detail));
            if let Some(ce) = &c.counterexample {
                out.push_str(&format!("{:<name_w$}  {:<6}  counterexample: {ce}\n", "", ""));
            }
        }
        if !self.entries.is_empty() {
            let item_w = self.entries.iter().map(|e| e.item.chars().count()).max().unwrap_or(0);
            out.push('\n');
            for e in &self.entries {
                out.push_str(&format!("{:<item_w$}  {}\n", e.item, e.value));
            }
        }
        let failed = self.checks.iter().filter(|c| c.status == Status::Fail).count();
        if failed == 0 {
            out.push_str(&format!("\nall {} checks passed", self.checks.len()));
        } else {
            out.push_str(&format!("\n{failed} of {} checks failed", self.checks.len()));
        }
        if let Some(ms) = self.timing_ms {
            out.push_str(&format!(" in {ms} ms"));
        }
        out.push('\n');
        out
    }
}
