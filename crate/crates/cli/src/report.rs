//! Certificates, the run envelope around them, and the two output forms.
//!
//! Everything except the `timings` maps is a function of the version, the
//! seed and the inputs, so two runs differ only there.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use hilb_core::Result;
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const VERSION: &str = concat!("hilb ", env!("CARGO_PKG_VERSION"));

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    IdentitySuite,
    Ledger,
    Factorization,
    MinorVanishing,
    MinorNonvanishing,
    Jacobian,
    Curve,
}

/// A self-contained claim: the inputs needed to re-check it without this
/// run, what was found, and whether that is what was claimed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: Kind,
    pub version: String,
    pub seed: u64,
    pub inputs: Value,
    pub outcome: Value,
    pub passed: bool,
    /// Milliseconds per labelled step.
    pub timings: BTreeMap<String, u64>,
}

impl Certificate {
    pub fn new(kind: Kind, seed: u64, inputs: impl Serialize, outcome: impl Serialize, passed: bool) -> Result<Self> {
        Ok(Certificate {
            kind,
            version: VERSION.to_string(),
            seed,
            inputs: serde_json::to_value(inputs)?,
            outcome: serde_json::to_value(outcome)?,
            passed,
            timings: BTreeMap::new(),
        })
    }

    pub fn timed(mut self, label: &str, millis: u128) -> Self {
        self.timings.insert(label.to_string(), millis as u64);
        self
    }
}

/// Everything one invocation produced.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub version: String,
    pub seed: u64,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub certificates: Vec<Certificate>,
    #[serde(default, skip_serializing_if = "Value::is_null")]
    pub data: Value,
    pub timings: BTreeMap<String, u64>,
    /// Rows of the text table; not part of the JSON.
    #[serde(skip)]
    pub table: Vec<(String, String)>,
}

impl Report {
    pub fn new(command: &str, seed: u64) -> Self {
        Report {
            command: command.to_string(),
            version: VERSION.to_string(),
            seed,
            passed: true,
            certificates: Vec::new(),
            data: Value::Null,
            timings: BTreeMap::new(),
            table: Vec::new(),
        }
    }

    pub fn row(&mut self, check: impl Into<String>, result: impl Into<String>) {
        self.table.push((check.into(), result.into()));
    }

    pub fn certify(&mut self, cert: Certificate) {
        self.passed &= cert.passed;
        self.certificates.push(cert);
    }

    pub fn with_data(mut self, data: impl Serialize) -> Result<Self> {
        self.data = serde_json::to_value(data)?;
        Ok(self)
    }

    pub fn text(&self) -> String {
        let width = self.table.iter().map(|(c, _)| c.chars().count()).max().unwrap_or(0).max(5);
        let mut out = String::new();
        let _ = writeln!(out, "{} {} (seed {})", self.version, self.command, self.seed);
        let _ = writeln!(out, "{:<width$}  result", "check");
        let _ = writeln!(out, "{}  {}", "-".repeat(width), "-".repeat(6));
        for (check, result) in &self.table {
            let _ = writeln!(out, "{check:<width$}  {result}");
        }
        let _ = writeln!(out, "{}", if self.passed { "PASS" } else { "FAIL" });
        out
    }

    pub fn json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }
}

/// `hilb-<command>.json` in the working directory unless given.
pub fn json_path(out: Option<&Path>, command: &str) -> PathBuf {
    out.map(Path::to_path_buf).unwrap_or_else(|| PathBuf::from(format!("hilb-{command}.json")))
}

/// Writes the JSON artifact and, beside it, the text table.
pub fn write_outputs(report: &Report, path: &Path) -> Result<()> {
    std::fs::write(path, report.json()?)?;
    std::fs::write(path.with_extension("txt"), report.text())?;
    Ok(())
}

/// The JSON with every `timings` object removed: the part that must be
/// byte-identical across runs with the same inputs.
pub fn without_timings(mut v: Value) -> Value {
    fn strip(v: &mut Value) {
        match v {
            Value::Object(map) => {
                map.remove("timings");
                map.values_mut().for_each(strip);
            }
            Value::Array(items) => items.iter_mut().for_each(strip),
            _ => {}
        }
    }
    strip(&mut v);
    v
}

pub fn millis(start: std::time::Instant) -> u128 {
    start.elapsed().as_millis()
}
