//! CSV and JSON emitters sharing one number format.

use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use clap::ValueEnum;
use serde::Serialize;
use serde_json::{Map, Value};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// A flat record whose keys keep insertion order.
pub type Record = Map<String, Value>;

/// Shortest round-trip decimal for finite values, `inf`, `-inf`, `nan` otherwise.
pub fn num(x: f64) -> Value {
    if x.is_finite() {
        Value::from(x)
    } else if x.is_nan() {
        Value::from("nan")
    } else if x > 0.0 {
        Value::from("inf")
    } else {
        Value::from("-inf")
    }
}

/// Builds a [`Record`] from `key => value` pairs.
#[macro_export]
macro_rules! record {
    ($($k:expr => $v:expr),* $(,)?) => {{
        let mut r = $crate::output::Record::new();
        $(r.insert(String::from($k), $v);)*
        r
    }};
}

#[derive(Debug, Serialize)]
pub struct OutputRecord {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub inputs: Record,
    pub rows: Vec<Record>,
}

impl OutputRecord {
    pub fn new(command: &'static str, inputs: Record, rows: Vec<Record>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            command,
            inputs,
            rows,
        }
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self)?;
                s.push('\n');
                Ok(s)
            }
            Format::Csv => Ok(self.to_csv()),
        }
    }

    fn to_csv(&self) -> String {
        let mut out = String::new();
        let Some(first) = self.rows.first() else {
            return out;
        };
        let header: Vec<&str> = first.keys().map(String::as_str).collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = header
                .iter()
                .map(|k| row.get(*k).map(cell).unwrap_or_default())
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// Writes to stdout and, when `out` is given, the same bytes to that file.
    pub fn emit(&self, format: Format, out: Option<&Path>) -> Result<()> {
        let text = self.render(format)?;
        if let Some(path) = out {
            fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
        }
        let mut stdout = std::io::stdout().lock();
        stdout.write_all(text.as_bytes())?;
        stdout.flush()?;
        Ok(())
    }
}

fn cell(v: &Value) -> String {
    let s = match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s
    }
}

/// `key=value` pairs joined by spaces, numbers in the shared format.
pub fn context(pairs: &[(&str, f64)]) -> String {
    pairs
        .iter()
        .map(|(k, v)| format!("{k}={}", cell(&num(*v))))
        .collect::<Vec<_>>()
        .join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_round_trip() {
        for x in [0.1, 1.0 / 3.0, std::f64::consts::E, 1e-300, 6.02e23] {
            let s = num(x).to_string();
            assert_eq!(s.parse::<f64>().unwrap(), x);
        }
        assert_eq!(num(f64::NEG_INFINITY), Value::from("-inf"));
    }

    #[test]
    fn csv_mirrors_json_rows() {
        let rows = vec![
            record! {"a" => num(1.5), "b" => Value::from("x,y")},
            record! {"a" => num(f64::INFINITY), "b" => Value::from(true)},
        ];
        let rec = OutputRecord::new("test", Record::new(), rows);
        assert_eq!(
            rec.render(Format::Csv).unwrap(),
            "a,b\n1.5,\"x,y\"\ninf,true\n"
        );
        let json: Value = serde_json::from_str(&rec.render(Format::Json).unwrap()).unwrap();
        assert_eq!(json["schema_version"], "1");
        assert_eq!(json["rows"][1]["a"], "inf");
    }

    #[test]
    fn context_uses_shared_format() {
        assert_eq!(context(&[("alpha", 0.5), ("r", 1e-6)]), "alpha=0.5 r=1e-6");
    }
}
