//! Deterministic reports: a list of named checks plus named outputs.

use std::fmt::Write as _;

use serde::Serialize;

use bfv_core::{Element, Error};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        }
    }
}

/// One verified property. `defect` is the canonical rendering of the
/// residual (`0` on a pass) or the error message.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub defect: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Output {
    pub name: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub command: String,
    pub instance_digest: String,
    pub checks: Vec<Check>,
    pub outputs: Vec<Output>,
}

impl Report {
    pub fn new(command: &str, instance_digest: String) -> Self {
        Report {
            command: command.to_string(),
            instance_digest,
            checks: Vec::new(),
            outputs: Vec::new(),
        }
    }

    fn push(&mut self, name: &str, status: Status, defect: String) {
        self.checks.push(Check {
            name: name.to_string(),
            status,
            defect,
        });
    }

    /// Pass iff `defect` is zero.
    pub fn defect(&mut self, name: &str, defect: &Element) {
        let status = if defect.is_zero() { Status::Pass } else { Status::Fail };
        self.push(name, status, defect.to_string());
    }

    /// Pass iff `ok`; `defect` explains a failure.
    pub fn condition(&mut self, name: &str, ok: bool, defect: impl FnOnce() -> String) {
        if ok {
            self.push(name, Status::Pass, "0".into());
        } else {
            self.push(name, Status::Fail, defect());
        }
    }

    pub fn error(&mut self, name: &str, err: &Error) {
        self.push(name, Status::Error, err.to_string());
    }

    /// Record `result` as an error check on failure and hand back the value.
    pub fn attempt<T>(&mut self, name: &str, result: Result<T, Error>) -> Option<T> {
        match result {
            Ok(v) => Some(v),
            Err(e) => {
                self.error(name, &e);
                None
            }
        }
    }

    pub fn output(&mut self, name: &str, value: impl ToString) {
        self.outputs.push(Output {
            name: name.to_string(),
            value: value.to_string(),
        });
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn exit_code(&self) -> i32 {
        if self.all_pass() {
            0
        } else {
            1
        }
    }

    /// Fixed-width human-readable form.
    pub fn render_text(&self) -> String {
        let width = self
            .checks
            .iter()
            .map(|c| c.name.chars().count())
            .chain(self.outputs.iter().map(|o| o.name.chars().count()))
            .chain(["instance".len()])
            .max()
            .unwrap_or(0);
        let mut out = String::new();
        writeln!(out, "{:<width$}  {}", "command", self.command).unwrap();
        writeln!(out, "{:<width$}  {}", "instance", self.instance_digest).unwrap();
        writeln!(out).unwrap();
        writeln!(out, "{:<width$}  {:<6}  defect", "check", "status").unwrap();
        for c in &self.checks {
            writeln!(out, "{:<width$}  {:<6}  {}", c.name, c.status.label(), c.defect).unwrap();
        }
        if !self.outputs.is_empty() {
            writeln!(out).unwrap();
            for o in &self.outputs {
                writeln!(out, "{:<width$}  {}", o.name, o.value).unwrap();
            }
        }
        let passed = self.checks.iter().filter(|c| c.status == Status::Pass).count();
        writeln!(out).unwrap();
        writeln!(out, "{passed}/{} checks passed", self.checks.len()).unwrap();
        out
    }

    /// Machine-readable JSON form.
    pub fn render_structured(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}
