//! Tabular results and their CSV / JSON encodings.

use std::io::Write;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{invalid, Result};

/// Named numeric columns; flags are stored as 0 / 1.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self { columns: columns.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

/// Shortest round-trip form would vary in width; 17 significant digits keep files stable.
pub fn format_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

pub fn flag(b: bool) -> f64 {
    if b {
        1.0
    } else {
        0.0
    }
}

/// Run metadata embedded in every output file.
pub fn meta(command: &str, config: Value, seed: Option<u64>) -> Value {
    json!({
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "config": config,
        "seed": seed,
    })
}

/// `# meta: {json}` followed by one header row and the data rows.
pub fn write_csv(out: &mut (impl Write + ?Sized), meta: &Value, table: &Table) -> Result<()> {
    if table.columns.iter().any(|c| c.contains(',')) {
        return Err(invalid("column names must not contain commas"));
    }
    writeln!(out, "# meta: {meta}")?;
    writeln!(out, "{}", table.columns.join(","))?;
    for row in &table.rows {
        let cells: Vec<String> = row.iter().map(|&x| format_float(x)).collect();
        writeln!(out, "{}", cells.join(","))?;
    }
    Ok(())
}

pub fn write_json(out: &mut (impl Write + ?Sized), meta: &Value, data: &impl Serialize) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, &json!({ "meta": meta, "data": data }))?;
    writeln!(out)?;
    Ok(())
}
