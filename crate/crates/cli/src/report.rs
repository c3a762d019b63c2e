use std::io::Write;

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Assertion {
    pub label: String,
    pub passed: bool,
    pub detail: String,
}

impl Assertion {
    pub fn new(label: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Assertion { label: label.into(), passed, detail: detail.into() }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Timings {
    pub total_ms: f64,
}

/// Everything one invocation produced. Identical inputs give identical
/// reports apart from `timings`.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub version: &'static str,
    pub command: String,
    pub seed: u64,
    pub parameters: Value,
    pub results: Value,
    pub assertions: Vec<Assertion>,
    pub timings: Timings,
}

impl RunReport {
    pub fn all_passed(&self) -> bool {
        self.assertions.iter().all(|a| a.passed)
    }

    pub fn write_json<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        serde_json::to_writer_pretty(&mut out, self)?;
        writeln!(out)
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// Writes flat JSON objects as CSV, columns in key order of the first row.
/// Nested values are written as JSON text.
pub fn write_csv<W: Write>(rows: &[Value], out: W) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    let Some(first) = rows.first().and_then(Value::as_object) else {
        return Ok(());
    };
    let header: Vec<&String> = first.keys().collect();
    w.write_record(header.iter().map(|s| s.as_str()))?;
    for row in rows {
        let record: Vec<String> = header.iter().map(|k| row.get(k.as_str()).map(cell).unwrap_or_default()).collect();
        w.write_record(&record)?;
    }
    w.flush()?;
    Ok(())
}
