//! Deterministic table output: fixed float formatting, fixed row order.

use clap::ValueEnum;
use std::io::Write;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Tsv,
}

impl OutputFormat {
    pub fn separator(self) -> char {
        match self {
            OutputFormat::Csv => ',',
            OutputFormat::Tsv => '\t',
        }
    }

    pub fn extension(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Tsv => "tsv",
        }
    }
}

/// Shortest round-trip representation in scientific notation, lowercase e.
/// Sign-zero log entries are passed in as NaN and written as the literal
/// token "nan".
pub fn fmt_float(v: f64) -> String {
    if v.is_nan() {
        "nan".to_string()
    } else {
        format!("{v:e}")
    }
}

/// 17 significant digits, for the exact-value renderings.
pub fn fmt_float17(v: f64) -> String {
    format!("{v:.16e}")
}

/// A table with a `#`-prefixed header row, UTF-8, LF line endings.
pub struct Table {
    columns: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Table {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        assert_eq!(row.len(), self.columns.len(), "ragged table row");
        self.rows.push(row);
    }

    pub fn write_to(&self, mut w: impl Write, format: OutputFormat) -> std::io::Result<()> {
        let sep = format.separator();
        let header: Vec<&str> = self.columns.to_vec();
        writeln!(w, "# {}", header.join(&sep.to_string()))?;
        for row in &self.rows {
            writeln!(w, "{}", row.join(&sep.to_string()))?;
        }
        Ok(())
    }
}
