//! Reports: named component tables plus verdicts, rendered for humans or as
//! versioned JSON. The expected-value fixtures use the same section layout.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::algebra::Check;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExitStatus {
    Pass,
    Mismatch,
    InvalidInput,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        match self {
            ExitStatus::Pass => 0,
            ExitStatus::Mismatch => 1,
            ExitStatus::InvalidInput => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub check: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub details: Vec<String>,
}

impl Verdict {
    pub fn new(check: impl Into<String>, passed: bool) -> Self {
        Verdict {
            check: check.into(),
            passed,
            details: Vec::new(),
        }
    }

    pub fn with_details(mut self, details: Vec<String>) -> Self {
        self.details = details;
        self
    }
}

impl From<&Check> for Verdict {
    fn from(check: &Check) -> Self {
        Verdict {
            check: check.name.to_string(),
            passed: check.passed(),
            details: check.violations.iter().map(|v| v.to_string()).collect(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Section {
    pub title: String,
    #[serde(default)]
    pub components: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub verdicts: Vec<Verdict>,
}

impl Section {
    pub fn new(title: impl Into<String>) -> Self {
        Section {
            title: title.into(),
            ..Section::default()
        }
    }

    pub fn component(&mut self, name: impl Into<String>, value: impl ToString) {
        self.components.insert(name.into(), value.to_string());
    }

    pub fn verdict(&mut self, verdict: impl Into<Verdict>) {
        self.verdicts.push(verdict.into());
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub sections: Vec<Section>,
    pub exit_status: ExitStatus,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.into(),
            sections: Vec::new(),
            exit_status: ExitStatus::Pass,
        }
    }

    pub fn invalid_input(command: impl Into<String>, message: impl Into<String>) -> Self {
        let mut report = Report::new(command);
        let mut section = Section::new("input");
        section.verdict(Verdict::new("valid input", false).with_details(vec![message.into()]));
        report.sections.push(section);
        report.exit_status = ExitStatus::InvalidInput;
        report
    }

    pub fn push(&mut self, section: Section) {
        self.sections.push(section);
    }

    /// Sets the exit status from the verdicts: pass only if every verdict passed.
    pub fn finish(mut self) -> Self {
        if self.exit_status != ExitStatus::InvalidInput {
            let all_pass = self.verdicts().all(|v| v.passed);
            self.exit_status = if all_pass {
                ExitStatus::Pass
            } else {
                ExitStatus::Mismatch
            };
        }
        self
    }

    pub fn verdicts(&self) -> impl Iterator<Item = &Verdict> {
        self.sections.iter().flat_map(|s| s.verdicts.iter())
    }

    pub fn section(&self, title: &str) -> Option<&Section> {
        self.sections.iter().find(|s| s.title == title)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_human(&self) -> String {
        let mut out = String::new();
        for section in &self.sections {
            let _ = writeln!(out, "== {} ==", section.title);
            let width = section
                .components
                .keys()
                .map(String::len)
                .max()
                .unwrap_or(0);
            for (name, value) in &section.components {
                let _ = writeln!(out, "  {name:<width$} = {value}");
            }
            for v in &section.verdicts {
                let tag = if v.passed { "PASS" } else { "FAIL" };
                let _ = writeln!(out, "  [{tag}] {}", v.check);
                for d in &v.details {
                    let _ = writeln!(out, "         {d}");
                }
            }
            out.push('\n');
        }
        let status = serde_json::to_value(self.exit_status).expect("status serializes");
        let _ = writeln!(out, "status: {}", status.as_str().unwrap_or("?"));
        out
    }
}
