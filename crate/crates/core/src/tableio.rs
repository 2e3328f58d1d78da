//! JSON and CSV serialization of solution tables.
//!
//! Rationals are written as strings in lowest terms (`"-11/3"`, `"12"`); entries
//! are ordered by `(⟨β,ω⟩, β, d)` so output is byte-for-byte reproducible.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::degrees::{CurveClass, Degree};
use crate::linalg::{parse_rational, Q};
use crate::solver::SolutionTable;

#[derive(Debug, Error)]
pub enum TableError {
    #[error("malformed JSON table: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed CSV table: {0}")]
    Csv(#[from] csv::Error),
    #[error("row {row}: {message}")]
    Entry { row: usize, message: String },
}

#[derive(Serialize, Deserialize)]
struct JsonEntry {
    beta: Vec<i64>,
    d: Vec<u32>,
    value: String,
}

#[derive(Serialize, Deserialize)]
struct JsonKey {
    beta: Vec<i64>,
    d: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct JsonTable {
    algebra: String,
    status: String,
    entries: Vec<JsonEntry>,
    #[serde(default)]
    free: Vec<JsonKey>,
    #[serde(default)]
    pins: Vec<JsonKey>,
}

fn sorted_keys<'a>(keys: impl Iterator<Item = &'a Degree>, omega: &[i64]) -> Vec<JsonKey> {
    let mut v: Vec<&Degree> = keys.collect();
    v.sort_by(|a, b| a.beta.dot(omega).cmp(&b.beta.dot(omega)).then_with(|| a.cmp(b)));
    v.into_iter().map(|k| JsonKey { beta: k.beta.0.clone(), d: k.d.clone() }).collect()
}

pub fn export_json(table: &SolutionTable, omega: &[i64]) -> String {
    let doc = JsonTable {
        algebra: table.algebra.clone(),
        status: table.status.clone(),
        entries: table
            .sorted_entries(omega)
            .into_iter()
            .map(|(k, v)| JsonEntry { beta: k.beta.0.clone(), d: k.d.clone(), value: v.to_string() })
            .collect(),
        free: sorted_keys(table.free(), omega),
        pins: sorted_keys(table.pins(), omega),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("plain data serializes");
    s.push('\n');
    s
}

fn parse_value(row: usize, s: &str) -> Result<Q, TableError> {
    parse_rational(s).ok_or_else(|| TableError::Entry { row, message: format!("bad rational `{s}`") })
}

pub fn import_json(text: &str) -> Result<SolutionTable, TableError> {
    let doc: JsonTable = serde_json::from_str(text)?;
    let mut t = SolutionTable::new(&doc.algebra);
    t.status = doc.status;
    for (row, e) in doc.entries.into_iter().enumerate() {
        let v = parse_value(row + 1, &e.value)?;
        t.insert(Degree::new(e.beta, e.d), v);
    }
    for (row, k) in doc.pins.into_iter().enumerate() {
        let key = Degree::new(k.beta, k.d);
        let Some(v) = t.get(&key).cloned() else {
            return Err(TableError::Entry { row: row + 1, message: format!("pinned {key} has no value") });
        };
        t.pin(key, v);
    }
    for k in doc.free {
        t.mark_free(Degree::new(k.beta, k.d));
    }
    Ok(t)
}

fn join(v: impl Iterator<Item = String>) -> String {
    v.collect::<Vec<_>>().join(",")
}

/// `beta;d;value` with comma-separated vectors. Only the values are kept.
pub fn export_csv(table: &SolutionTable, omega: &[i64]) -> String {
    let mut w = csv::WriterBuilder::new().delimiter(b';').from_writer(Vec::new());
    w.write_record(["beta", "d", "value"]).expect("in-memory write");
    for (k, v) in table.sorted_entries(omega) {
        w.write_record([
            join(k.beta.0.iter().map(i64::to_string)),
            join(k.d.iter().map(u32::to_string)),
            v.to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii")
}

fn parse_list<T: std::str::FromStr>(row: usize, s: &str) -> Result<Vec<T>, TableError> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| x.trim().parse().map_err(|_| TableError::Entry { row, message: format!("bad vector `{s}`") }))
        .collect()
}

pub fn import_csv(text: &str, algebra: &str) -> Result<SolutionTable, TableError> {
    let mut r = csv::ReaderBuilder::new().delimiter(b';').from_reader(text.as_bytes());
    let mut t = SolutionTable::new(algebra);
    for (i, rec) in r.records().enumerate() {
        let rec = rec?;
        let row = i + 1;
        if rec.len() != 3 {
            return Err(TableError::Entry { row, message: format!("expected 3 fields, found {}", rec.len()) });
        }
        let beta = parse_list::<i64>(row, &rec[0])?;
        let d = parse_list::<u32>(row, &rec[1])?;
        t.insert(Degree { beta: CurveClass(beta), d }, parse_value(row, &rec[2])?);
    }
    Ok(t)
}
