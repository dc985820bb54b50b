use std::io::Write;

use clap::ValueEnum;
use serde::Deserialize;
use serde_json::Value;

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Table,
}

/// A command result: a JSON document plus a flat table view of it.
pub struct Report {
    pub json: Value,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Report {
    pub fn tabular(json: Value, headers: &[&str], rows: Vec<Vec<String>>) -> Self {
        Report {
            json,
            headers: headers.iter().map(|s| s.to_string()).collect(),
            rows,
        }
    }

    /// Table view as `key,value` pairs of the flattened document.
    pub fn document(json: Value) -> Self {
        let mut rows = Vec::new();
        flatten("", &json, &mut rows);
        Report {
            json,
            headers: vec!["key".into(), "value".into()],
            rows,
        }
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, &self.json)?;
                writeln!(out)
            }
            Format::Csv => {
                // keep the io error kind so a closed pipe stays recognisable
                let io = |e: csv::Error| match e.into_kind() {
                    csv::ErrorKind::Io(e) => e,
                    other => std::io::Error::other(format!("{other:?}")),
                };
                let mut w = csv::Writer::from_writer(out);
                w.write_record(&self.headers).map_err(io)?;
                for row in &self.rows {
                    w.write_record(row).map_err(io)?;
                }
                w.flush()
            }
            Format::Table => {
                let mut widths: Vec<usize> = self.headers.iter().map(String::len).collect();
                for row in &self.rows {
                    for (w, cell) in widths.iter_mut().zip(row) {
                        *w = (*w).max(cell.chars().count());
                    }
                }
                let line = |cells: &[String]| {
                    let padded: Vec<String> = cells
                        .iter()
                        .zip(&widths)
                        .map(|(c, w)| format!("{c:<w$}"))
                        .collect();
                    padded.join("  ").trim_end().to_string()
                };
                writeln!(out, "{}", line(&self.headers))?;
                for row in &self.rows {
                    writeln!(out, "{}", line(row))?;
                }
                Ok(())
            }
        }
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<Vec<String>>) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(map) => {
            for (k, v) in map {
                flatten(&key(k), v, out);
            }
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten(&key(&i.to_string()), v, out);
            }
        }
        Value::String(s) => out.push(vec![prefix.to_string(), s.clone()]),
        Value::Null => out.push(vec![prefix.to_string(), String::new()]),
        other => out.push(vec![prefix.to_string(), other.to_string()]),
    }
}

pub fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}
