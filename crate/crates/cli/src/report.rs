//! The report envelope and its three renderings.
//!
//! Structured output is the contract; the table is the same rows laid out
//! for reading.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::args::Format;
use crate::CliError;

pub const SCHEMA_VERSION: &str = "gpmc-report/1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub config: Value,
    pub result: Value,
    pub stats: Value,
    pub version: String,
}

impl Report {
    pub fn new(command: &str, config: Value, result: Value, stats: Value) -> Self {
        Report {
            command: command.to_owned(),
            config,
            result,
            stats,
            version: SCHEMA_VERSION.to_owned(),
        }
    }
}

/// Rows shared by the table and CSV renderings.
#[derive(Debug, Clone, Default)]
pub struct Table {
    /// `key: value` lines printed above the table.
    pub summary: Vec<(String, String)>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<I, S>(header: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Table {
            header: header.into_iter().map(Into::into).collect(),
            ..Table::default()
        }
    }

    pub fn note(&mut self, key: &str, value: impl ToString) {
        self.summary.push((key.to_owned(), value.to_string()));
    }

    pub fn row<I, S>(&mut self, cells: I)
    where
        I: IntoIterator<Item = S>,
        S: ToString,
    {
        self.rows.push(cells.into_iter().map(|c| c.to_string()).collect());
    }

    fn text(&self) -> String {
        let mut out = String::new();
        let key_width = self.summary.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in &self.summary {
            let _ = writeln!(out, "{k:<key_width$}  {v}");
        }
        if self.header.is_empty() {
            return out;
        }
        if !self.summary.is_empty() {
            out.push('\n');
        }
        let mut widths: Vec<usize> = self.header.iter().map(|h| h.chars().count()).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let line = |cells: &[String], out: &mut String| {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, &w)| format!("{c:<w$}"))
                .collect();
            let _ = writeln!(out, "{}", padded.join("  ").trim_end());
        };
        line(&self.header, &mut out);
        let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
        line(&rule, &mut out);
        for row in &self.rows {
            line(row, &mut out);
        }
        out
    }

    fn csv(&self) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Input(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

pub fn render(report: &Report, table: &Table, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(report)? + "\n"),
        Format::Csv => table.csv(),
        Format::Table => Ok(table.text()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn sample() -> Table {
        let mut t = Table::new(["n", "value"]);
        t.note("graph", "Q_3");
        t.row(["3", "2"]);
        t.row(["10", "a, b"]);
        t
    }

    #[test]
    fn table_aligns_columns() {
        let text = sample().text();
        assert_eq!(text, "graph  Q_3\n\nn   value\n--  -----\n3   2\n10  a, b\n");
    }

    #[test]
    fn csv_quotes_commas() {
        assert_eq!(sample().csv().unwrap(), "n,value\n3,2\n10,\"a, b\"\n");
    }

    #[test]
    fn json_envelope_roundtrips() {
        let r = Report::new("topology", json!({"n": 3}), json!({"edges": 12}), Value::Null);
        let text = render(&r, &Table::default(), Format::Json).unwrap();
        let back: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.version, SCHEMA_VERSION);
        let top: serde_json::Map<String, Value> = serde_json::from_str(&text).unwrap();
        let keys: Vec<&str> = top.keys().map(String::as_str).collect();
        assert_eq!(keys, ["command", "config", "result", "stats", "version"]);
    }
}
