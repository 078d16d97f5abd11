//! Result tables written as CSV or JSON.

use std::io::Write;

use serde_json::{json, Value};

use crate::params::{Common, Format};
use crate::CliError;

#[derive(Debug, Clone)]
pub enum Cell {
    Float(f64),
    Int(i64),
    Text(String),
    Bool(bool),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl Cell {
    /// 17 significant digits for floats, so values round-trip exactly.
    fn csv(&self) -> String {
        match self {
            Cell::Float(v) => format!("{v:.16e}"),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Float(v) if v.is_finite() => json!(v),
            Cell::Float(v) => json!(v.to_string()),
            Cell::Int(v) => json!(v),
            Cell::Text(s) => json!(s),
            Cell::Bool(b) => json!(b),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Self {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

fn metadata(subcommand: &str) -> (String, u64) {
    let stamp = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    (
        format!("fflcu {} {subcommand}", env!("CARGO_PKG_VERSION")),
        stamp,
    )
}

fn render(table: &Table, subcommand: &str, common: &Common) -> Result<Vec<u8>, CliError> {
    match common.format {
        Format::Csv => {
            let mut buf = Vec::new();
            if common.metadata {
                let (tool, stamp) = metadata(subcommand);
                writeln!(buf, "# {tool} unix_time={stamp}").map_err(CliError::Io)?;
            }
            let mut w = csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(buf);
            w.write_record(&table.columns)
                .map_err(|e| CliError::Io(e.into()))?;
            for row in &table.rows {
                w.write_record(row.iter().map(Cell::csv))
                    .map_err(|e| CliError::Io(e.into()))?;
            }
            w.into_inner().map_err(|e| CliError::Io(e.into_error()))
        }
        Format::Json => {
            let rows: Vec<Value> = table
                .rows
                .iter()
                .map(|r| {
                    Value::Object(
                        table
                            .columns
                            .iter()
                            .zip(r)
                            .map(|(c, v)| (c.to_string(), v.json()))
                            .collect(),
                    )
                })
                .collect();
            let mut doc = json!({ "columns": table.columns, "rows": rows });
            if common.metadata {
                let (tool, stamp) = metadata(subcommand);
                doc["metadata"] = json!({ "tool": tool, "unix_time": stamp });
            }
            let mut buf = serde_json::to_vec_pretty(&doc).map_err(|e| CliError::Io(e.into()))?;
            buf.push(b'\n');
            Ok(buf)
        }
    }
}

pub fn emit(table: &Table, subcommand: &str, common: &Common) -> Result<(), CliError> {
    let bytes = render(table, subcommand, common)?;
    match &common.out {
        Some(path) => std::fs::write(path, bytes).map_err(CliError::Io),
        None => std::io::stdout().write_all(&bytes).map_err(CliError::Io),
    }
}
