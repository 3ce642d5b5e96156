//! Tables, estimates and verdicts produced by an experiment, and their
//! atomic serialization to CSV and JSON.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::stats::Estimate;

/// One CSV cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Num(f64),
    Int(u64),
    Text(String),
    Empty,
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            // `Display` for f64 prints the shortest string that round-trips.
            Value::Num(x) => write!(f, "{x}"),
            Value::Int(n) => write!(f, "{n}"),
            Value::Text(s) => f.write_str(s),
            Value::Empty => Ok(()),
        }
    }
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Num(x)
    }
}

impl From<u64> for Value {
    fn from(n: u64) -> Self {
        Value::Int(n)
    }
}

impl From<usize> for Value {
    fn from(n: usize) -> Self {
        Value::Int(n as u64)
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Text(s.to_string())
    }
}

impl From<String> for Value {
    fn from(s: String) -> Self {
        Value::Text(s)
    }
}

impl From<Option<f64>> for Value {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Value::Empty, Value::Num)
    }
}

/// A named table written as `<name>.csv`.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Self {
            name: name.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len(), "row width of table {}", self.name);
        self.rows.push(row);
    }

    /// CSV text with a leading `seed` column.
    pub fn to_csv(&self, seed: u64) -> std::io::Result<Vec<u8>> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["seed".to_string()];
        header.extend(self.columns.iter().cloned());
        w.write_record(&header)?;
        for row in &self.rows {
            let mut rec = vec![seed.to_string()];
            rec.extend(row.iter().map(|v| v.to_string()));
            w.write_record(&rec)?;
        }
        w.into_inner().map_err(|e| e.into_error())
    }
}

/// A named estimate with its Monte Carlo standard error.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NamedEstimate {
    pub name: String,
    pub value: f64,
    pub std_error: f64,
}

/// Outcome of comparing a measurement with an oracle or target.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub check: String,
    pub observed: f64,
    pub target: f64,
    /// Allowed deviation; for one-sided checks the upper limit on `observed`.
    pub tolerance: f64,
    pub pass: bool,
}

impl Verdict {
    /// `|observed − target| ≤ tolerance`.
    pub fn within(check: impl Into<String>, observed: f64, target: f64, tolerance: f64) -> Self {
        Self {
            check: check.into(),
            observed,
            target,
            tolerance,
            pass: (observed - target).abs() <= tolerance,
        }
    }

    /// `observed < limit`.
    pub fn below(check: impl Into<String>, observed: f64, limit: f64) -> Self {
        Self {
            check: check.into(),
            observed,
            target: 0.0,
            tolerance: limit,
            pass: observed < limit,
        }
    }

    /// A boolean property; `observed` carries the witness value.
    pub fn holds(check: impl Into<String>, observed: f64, pass: bool) -> Self {
        Self {
            check: check.into(),
            observed,
            target: f64::NAN,
            tolerance: f64::NAN,
            pass,
        }
    }
}

/// Everything an experiment produces.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    pub tables: Vec<Table>,
    pub estimates: Vec<NamedEstimate>,
    pub verdicts: Vec<Verdict>,
    /// Realizations resampled because the window could not certify them.
    pub discarded: u64,
}

impl Report {
    pub fn estimate(&mut self, name: impl Into<String>, e: Estimate) {
        self.estimates.push(NamedEstimate {
            name: name.into(),
            value: e.value,
            std_error: e.std_error,
        });
    }

    pub fn value(&mut self, name: impl Into<String>, value: f64) {
        self.estimates.push(NamedEstimate {
            name: name.into(),
            value,
            std_error: 0.0,
        });
    }

    pub fn verdict(&mut self, v: Verdict) {
        self.verdicts.push(v);
    }

    pub fn find_estimate(&self, name: &str) -> Option<&NamedEstimate> {
        self.estimates.iter().find(|e| e.name == name)
    }

    pub fn find_verdict(&self, check: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.check == check)
    }

    pub fn table(&self, name: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.name == name)
    }

    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }
}

/// Writes every table and the summary into `out`. Files are first written to
/// a sibling staging directory that is renamed into place, so a failed run
/// never leaves partial output.
pub fn write_atomically(out: &Path, files: &[(String, Vec<u8>)]) -> std::io::Result<()> {
    let parent = match out.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    fs::create_dir_all(&parent)?;
    let name = out
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| "out".into());
    let staging = tempfile::Builder::new()
        .prefix(&format!(".{name}."))
        .tempdir_in(&parent)?;
    for (file, bytes) in files {
        fs::write(staging.path().join(file), bytes)?;
    }
    if out.exists() {
        fs::remove_dir_all(out)?;
    }
    let staged = staging.keep();
    fs::rename(&staged, out)
}
