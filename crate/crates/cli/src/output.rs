//! Emission of command results as JSON, CSV or an aligned table.

use std::io::Write;

use clap::ValueEnum;
use serde_json::{Map, Value};

use crate::error::CliResult;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

/// What a command produced: the full JSON document, and the flat rows used
/// for CSV and table output.
pub struct Output {
    pub document: Value,
    pub rows: Vec<Value>,
}

impl Output {
    /// A document whose rows are its own array elements (or itself).
    pub fn from_rows(rows: Vec<Value>) -> Self {
        Output { document: Value::Array(rows.clone()), rows }
    }

    pub fn single(row: Value) -> Self {
        Output { document: row.clone(), rows: vec![row] }
    }
}

/// Scalar rendering of a cell: strings bare, `null` empty, nested values as JSON.
fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Bool(_) | Value::Number(_) => v.to_string(),
        _ => v.to_string(),
    }
}

/// Column names in first-seen order across all rows.
fn columns(rows: &[Value]) -> Vec<String> {
    let mut cols: Vec<String> = Vec::new();
    for row in rows {
        if let Value::Object(map) = row {
            for k in map.keys() {
                if !cols.contains(k) {
                    cols.push(k.clone());
                }
            }
        }
    }
    if cols.is_empty() {
        cols.push("value".into());
    }
    cols
}

fn row_cells(row: &Value, cols: &[String]) -> Vec<String> {
    match row {
        Value::Object(map) => cols.iter().map(|c| map.get(c).map(cell).unwrap_or_default()).collect(),
        other => vec![cell(other)],
    }
}

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn render(output: &Output, format: Format) -> CliResult<String> {
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(&output.document)? + "\n",
        Format::Csv => {
            let cols = columns(&output.rows);
            let mut out = cols.iter().map(|c| csv_escape(c)).collect::<Vec<_>>().join(",") + "\n";
            for row in &output.rows {
                out += &row_cells(row, &cols).iter().map(|c| csv_escape(c)).collect::<Vec<_>>().join(",");
                out.push('\n');
            }
            out
        }
        Format::Table => {
            let cols = columns(&output.rows);
            let body: Vec<Vec<String>> = output.rows.iter().map(|r| row_cells(r, &cols)).collect();
            let widths: Vec<usize> = cols
                .iter()
                .enumerate()
                .map(|(i, c)| body.iter().map(|r| r[i].chars().count()).chain([c.chars().count()]).max().unwrap_or(0))
                .collect();
            let line = |cells: &[String]| {
                cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
                    .trim_end()
                    .to_string()
                    + "\n"
            };
            let mut out = line(&cols);
            out += &(widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().join("  ") + "\n");
            for r in &body {
                out += &line(r);
            }
            out
        }
    })
}

pub fn emit(output: &Output, format: Format) -> CliResult<()> {
    let text = render(output, format)?;
    let mut stdout = std::io::stdout().lock();
    stdout.write_all(text.as_bytes())?;
    stdout.flush()?;
    Ok(())
}

/// Builds a JSON object from ordered `(key, value)` pairs.
pub fn object<const N: usize>(pairs: [(&str, Value); N]) -> Value {
    let mut map = Map::new();
    for (k, v) in pairs {
        map.insert(k.to_string(), v);
    }
    Value::Object(map)
}
