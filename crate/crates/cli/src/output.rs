//! Reports and their JSON / CSV renderings.

use std::fs;
use std::io::Write;

use anyhow::{Context, Result};
use nlcs_core::report::{round_json, to_report_json, CheckRecord};
use serde::Serialize;
use serde_json::Value;

use crate::config::{Format, RunConfig};

/// The result of one command: its configuration, the checks it ran, a
/// free-form summary and an optional table of rows.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub config: RunConfig,
    pub pass: bool,
    pub checks: Vec<CheckRecord>,
    pub summary: Value,
    pub rows: Vec<Value>,
}

impl Report {
    pub fn new(config: RunConfig, checks: Vec<CheckRecord>, summary: Value, rows: Vec<Value>) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        Self {
            config,
            pass,
            checks,
            summary,
            rows,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn render(&self) -> Result<String> {
        match self.config.format {
            Format::Json => Ok(to_report_json(self)? + "\n"),
            Format::Csv => self.to_csv(),
        }
    }

    /// The row table when there is one, the check list otherwise.
    pub fn to_csv(&self) -> Result<String> {
        let records: Vec<Value> = if self.rows.is_empty() {
            self.checks.iter().map(serde_json::to_value).collect::<serde_json::Result<_>>()?
        } else {
            self.rows.clone()
        };
        let records: Vec<Value> = records.into_iter().map(round_json).collect();
        let mut w = csv::Writer::from_writer(Vec::new());
        let header: Vec<String> = match records.first() {
            Some(Value::Object(map)) => map.keys().cloned().collect(),
            _ => Vec::new(),
        };
        if !header.is_empty() {
            w.write_record(&header)?;
        }
        for rec in &records {
            let cells: Vec<String> = header.iter().map(|k| csv_cell(rec.get(k).unwrap_or(&Value::Null))).collect();
            w.write_record(&cells)?;
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }

    /// Writes to `--out` or standard output.
    pub fn emit(&self) -> Result<()> {
        let text = self.render()?;
        match &self.config.out {
            Some(path) => fs::write(path, text).with_context(|| format!("writing report to {}", path.display())),
            None => std::io::stdout().write_all(text.as_bytes()).context("writing report to stdout"),
        }
    }
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
