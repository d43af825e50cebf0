use std::io::{self, Write};

use clap::ValueEnum;
use serde_json::{Map, Number, Value};

pub use nri::report::sci;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Rows of already-formatted fields under a fixed header.
pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: AsRef<str>>(header: &[S]) -> Self {
        Self {
            header: header.iter().map(|h| h.as_ref().to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn write<W: Write>(&self, format: Format, mut w: W) -> io::Result<()> {
        match format {
            Format::Csv => {
                nri::report::write_row(&mut w, &self.header)?;
                for r in &self.rows {
                    nri::report::write_row(&mut w, r)?;
                }
            }
            Format::Json => {
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|r| {
                        let obj: Map<String, Value> = self
                            .header
                            .iter()
                            .cloned()
                            .zip(r.iter().map(|f| json_field(f)))
                            .collect();
                        Value::Object(obj)
                    })
                    .collect();
                serde_json::to_writer_pretty(&mut w, &rows)?;
                writeln!(w)?;
            }
        }
        Ok(())
    }
}

/// Numbers become JSON numbers, empty fields null, anything else a string.
fn json_field(f: &str) -> Value {
    if f.is_empty() {
        return Value::Null;
    }
    if let Ok(i) = f.parse::<i64>() {
        return Value::Number(i.into());
    }
    match f.parse::<f64>().ok().and_then(Number::from_f64) {
        Some(n) => Value::Number(n),
        None => Value::String(f.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_rows() {
        let mut t = Table::new(&["a", "b", "c", "d"]);
        t.push(vec![
            "1".into(),
            "2.5e-3".into(),
            "".into(),
            "one_way".into(),
        ]);
        let mut out = Vec::new();
        t.write(Format::Json, &mut out).unwrap();
        let v: Value = serde_json::from_slice(&out).unwrap();
        assert_eq!(v[0]["a"], 1);
        assert_eq!(v[0]["b"], 2.5e-3);
        assert!(v[0]["c"].is_null());
        assert_eq!(v[0]["d"], "one_way");
    }
}
