//! Reports: one JSON document per command, with CSV and plain-text renderings
//! of the same tables.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use tatehh::exactla::Mat;

use crate::spec::SpecFile;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct AlgebraInfo {
    pub name: String,
    pub field: String,
    pub dim: usize,
    pub hash: String,
}

impl AlgebraInfo {
    pub fn of(spec: &SpecFile) -> AlgebraInfo {
        AlgebraInfo {
            name: spec.name.clone(),
            field: spec.algebra.field().to_string(),
            dim: spec.algebra.dim(),
            hash: spec.hash.clone(),
        }
    }
}

/// A per-degree table; the first column is the degree.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<i64>>,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Report {
    pub command: String,
    pub args: BTreeMap<String, String>,
    pub algebra: Option<AlgebraInfo>,
    pub tables: Vec<Table>,
    pub checks: Vec<Check>,
    pub data: BTreeMap<String, Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, u64>>,
}

impl Report {
    pub fn new(command: &str, spec: Option<&SpecFile>) -> Report {
        Report {
            command: command.to_string(),
            args: BTreeMap::new(),
            algebra: spec.map(AlgebraInfo::of),
            tables: Vec::new(),
            checks: Vec::new(),
            data: BTreeMap::new(),
            timings_ms: None,
        }
    }

    pub fn arg(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.args.insert(key.to_string(), value.to_string());
        self
    }

    pub fn data(&mut self, key: &str, value: impl Serialize) {
        self.data.insert(key.to_string(), serde_json::to_value(value).expect("report data serializes"));
    }

    pub fn check(&mut self, name: &str, status: Status, detail: impl Into<String>) {
        self.checks.push(Check { name: name.to_string(), status, detail: detail.into() });
    }

    pub fn failed(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail).collect()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// The named table (or the first one) as CSV, one row per degree.
    pub fn to_csv(&self, table: Option<&str>) -> Option<String> {
        let t = match table {
            Some(name) => self.tables.iter().find(|t| t.name == name)?,
            None => self.tables.first()?,
        };
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&t.columns).ok()?;
        for row in &t.rows {
            w.write_record(row.iter().map(|v| v.to_string())).ok()?;
        }
        String::from_utf8(w.into_inner().ok()?).ok()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(a) = &self.algebra {
            let _ = writeln!(out, "{} over {} (dim {}), {}", a.name, a.field, a.dim, &a.hash[..12]);
        }
        for t in &self.tables {
            let _ = writeln!(out, "\n{}", t.name);
            let cells: Vec<Vec<String>> = std::iter::once(t.columns.clone())
                .chain(t.rows.iter().map(|r| r.iter().map(|v| v.to_string()).collect()))
                .collect();
            let widths: Vec<usize> = (0..t.columns.len())
                .map(|j| cells.iter().map(|r| r[j].chars().count()).max().unwrap_or(0))
                .collect();
            for r in &cells {
                let line: Vec<String> = r.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
                let _ = writeln!(out, "  {}", line.join("  "));
            }
        }
        if !self.checks.is_empty() {
            out.push('\n');
            for c in &self.checks {
                let tag = match c.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::Skip => "SKIP",
                };
                let _ = writeln!(out, "{tag} {:<28} {}", c.name, c.detail);
            }
        }
        for (k, v) in &self.data {
            if matches!(v, Value::Bool(_) | Value::Number(_) | Value::String(_)) {
                let _ = writeln!(out, "{k}: {v}");
            }
        }
        out
    }
}

/// Matrix entries as strings, row by row.
pub fn matrix(m: &Mat) -> Vec<Vec<String>> {
    m.entry_strings()
}
