//! CSV and JSON serializers for [`ExperimentRecord`]s.
//!
//! CSV: a header row followed by data rows, RFC 4180 quoting, floats written
//! as `{:.16e}` (17 significant digits, exact round trip), booleans as
//! `true`/`false`.
//!
//! JSON: one object per table with keys, in order, `experiment`, `seed`,
//! `parameters`, `metadata`, `table`, `columns`, `rows`. `parameters` and
//! `metadata` keep the record's order; `rows` is an array of arrays.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::experiments::{Cell, ExperimentRecord, Table};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::InvalidParameter(format!("unknown format {other:?} (csv|json)"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.extension())
    }
}

pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn cell_text(c: &Cell) -> String {
    match c {
        Cell::Int(i) => i.to_string(),
        Cell::Float(x) => format_float(*x),
        Cell::Text(s) => s.clone(),
        Cell::Bool(b) => b.to_string(),
    }
}

pub fn table_to_csv(table: &Table) -> Result<Vec<u8>> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(Vec::new());
    w.write_record(&table.columns)?;
    for row in &table.rows {
        w.write_record(row.iter().map(cell_text))?;
    }
    w.into_inner().map_err(|e| Error::Io(e.into_error()))
}

struct Ordered<'a>(&'a [(String, String)]);

impl Serialize for Ordered<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Cell::Int(i) => s.serialize_i64(*i),
            Cell::Float(x) => s.serialize_f64(*x),
            Cell::Text(t) => s.serialize_str(t),
            Cell::Bool(b) => s.serialize_bool(*b),
        }
    }
}

#[derive(Serialize)]
struct JsonTable<'a> {
    experiment: &'a str,
    seed: u64,
    parameters: Ordered<'a>,
    metadata: Ordered<'a>,
    table: &'a str,
    columns: &'a [String],
    rows: &'a [Vec<Cell>],
}

pub fn table_to_json(record: &ExperimentRecord, table: &Table) -> Result<Vec<u8>> {
    let doc = JsonTable {
        experiment: &record.experiment,
        seed: record.seed.0,
        parameters: Ordered(&record.parameters),
        metadata: Ordered(&record.metadata),
        table: &table.name,
        columns: &table.columns,
        rows: &table.rows,
    };
    let mut bytes = serde_json::to_vec_pretty(&doc)?;
    bytes.push(b'\n');
    Ok(bytes)
}

/// Serializes the record's primary table.
pub fn serialize_record(record: &ExperimentRecord, format: Format) -> Result<Vec<u8>> {
    serialize_table(record, record.primary(), format)
}

pub fn serialize_table(record: &ExperimentRecord, table: &Table, format: Format) -> Result<Vec<u8>> {
    match format {
        Format::Csv => table_to_csv(table),
        Format::Json => table_to_json(record, table),
    }
}

/// Writes every table as `<out_dir>/<table name>.<ext>` and returns the paths.
pub fn write_record(record: &ExperimentRecord, out_dir: &Path, format: Format) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(out_dir)?;
    record
        .tables
        .iter()
        .map(|t| {
            let path = out_dir.join(format!("{}.{}", t.name, format.extension()));
            std::fs::write(&path, serialize_table(record, t, format)?)?;
            Ok(path)
        })
        .collect()
}
