//! Machine-readable run reports. Field order and names are part of the
//! output contract; nothing time-dependent is recorded, so identical
//! configurations give byte-identical reports.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::Serialize;

pub const TOOL: &str = "oscgroup";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Residual {
    /// Exact check: number of non-zero residual terms and one of them.
    Symbolic { nonzero: usize, sample: Option<String> },
    /// Floating-point check against a tolerance.
    Numeric { value: f64, tolerance: f64 },
    /// Lower-bound check: passes iff `value > threshold`.
    Above { value: f64, threshold: f64 },
    /// Counting check: `found` violations where at least `expected` are
    /// required (perturbation detection and similar).
    Count { found: usize, expected: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub residual: Residual,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub location: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "serde_json::Value::is_null")]
    pub data: serde_json::Value,
}

impl Check {
    fn new(name: impl Into<String>, ok: bool, residual: Residual) -> Check {
        Check {
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            residual,
            location: None,
            detail: None,
            data: serde_json::Value::Null,
        }
    }

    pub fn symbolic(name: impl Into<String>, nonzero: usize, sample: Option<String>) -> Check {
        Check::new(name, nonzero == 0, Residual::Symbolic { nonzero, sample })
    }

    /// Passes iff `value ≤ tolerance` (NaN fails).
    pub fn numeric(name: impl Into<String>, value: f64, tolerance: f64) -> Check {
        Check::new(name, value <= tolerance, Residual::Numeric { value, tolerance })
    }

    /// Passes iff `value > threshold`.
    pub fn above(name: impl Into<String>, value: f64, threshold: f64) -> Check {
        Check::new(name, value > threshold, Residual::Above { value, threshold })
    }

    pub fn count(name: impl Into<String>, found: usize, expected: usize) -> Check {
        Check::new(name, found >= expected, Residual::Count { found, expected })
    }

    /// A check that could not be carried out.
    pub fn error(name: impl Into<String>, msg: impl Into<String>) -> Check {
        let mut c = Check::new(name, false, Residual::Count { found: 0, expected: 1 });
        c.detail = Some(msg.into());
        c
    }

    pub fn at(mut self, location: impl Into<String>) -> Check {
        self.location = Some(location.into());
        self
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Check {
        self.detail = Some(detail.into());
        self
    }

    pub fn with_data(mut self, data: serde_json::Value) -> Check {
        self.data = data;
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub config: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl Report {
    pub fn new(command: &str, config: BTreeMap<String, String>, checks: Vec<Check>) -> Report {
        let passed = checks.iter().all(Check::passed);
        Report {
            tool: TOOL,
            version: VERSION,
            command: command.to_string(),
            config,
            checks,
            passed,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report is serializable");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {} {}", self.tool, self.version, self.command);
        if !self.config.is_empty() {
            let cfg: Vec<String> = self.config.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let _ = writeln!(out, "config: {}", cfg.join(" "));
        }
        for c in &self.checks {
            let tag = if c.passed() { "PASS" } else { "FAIL" };
            let _ = write!(out, "[{tag}] {}  residual: {}", c.name, residual_text(&c.residual));
            if let Some(l) = &c.location {
                let _ = write!(out, "  at {l}");
            }
            out.push('\n');
            if let Some(d) = &c.detail {
                let _ = writeln!(out, "       {d}");
            }
        }
        let failed = self.checks.iter().filter(|c| !c.passed()).count();
        let _ = writeln!(
            out,
            "result: {} ({} checks, {} failed)",
            if self.passed { "PASS" } else { "FAIL" },
            self.checks.len(),
            failed
        );
        out
    }
}

pub fn residual_text(r: &Residual) -> String {
    match r {
        Residual::Symbolic { nonzero: 0, .. } => "symbolic zero".into(),
        Residual::Symbolic { nonzero, sample } => match sample {
            Some(s) => format!("{nonzero} non-zero terms, e.g. {s}"),
            None => format!("{nonzero} non-zero terms"),
        },
        Residual::Numeric { value, tolerance } => format!("{value:.3e} (tol {tolerance:.1e})"),
        Residual::Above { value, threshold } => format!("{value:.3e} (must exceed {threshold:.1e})"),
        Residual::Count { found, expected } => format!("{found} (need ≥ {expected})"),
    }
}
