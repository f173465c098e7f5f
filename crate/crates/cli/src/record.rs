//! Output records. In `records` format each record is one JSON object per
//! line with sorted keys; in `text` format each field is a `key: value` line
//! and records are separated by blank lines.

use std::io::{self, Write};

use clap::ValueEnum;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Records,
}

#[derive(Clone, Debug, Default)]
pub struct Record {
    fields: Vec<(String, Value)>,
}

impl Record {
    pub fn new(kind: &str) -> Self {
        Record::default().with("record", kind)
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.set(key, value);
        self
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        let value = value.into();
        match self.fields.iter_mut().find(|(k, _)| k == key) {
            Some(slot) => slot.1 = value,
            None => self.fields.push((key.to_string(), value)),
        }
    }

    fn json(&self) -> String {
        let map: Map<String, Value> = self.fields.iter().cloned().collect();
        Value::Object(map).to_string()
    }

    fn text(&self) -> String {
        self.fields
            .iter()
            .map(|(k, v)| format!("{k}: {}\n", render(v)))
            .collect()
    }
}

fn render(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().unwrap_or(f64::NAN);
            if x != 0.0 && x.abs() < 1e-3 {
                format!("{x:e}")
            } else {
                format!("{x:.6}")
            }
        }
        Value::Array(items) => items.iter().map(render).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

pub fn emit(records: &[Record], format: Format, out: &mut impl Write) -> io::Result<()> {
    for (i, r) in records.iter().enumerate() {
        match format {
            Format::Records => writeln!(out, "{}", r.json())?,
            Format::Text => {
                if i > 0 {
                    writeln!(out)?;
                }
                write!(out, "{}", r.text())?;
            }
        }
    }
    Ok(())
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// A JSON number, or `null` for non-finite values.
pub fn float(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

pub fn opt_float(x: Option<f64>) -> Value {
    x.map_or(Value::Null, float)
}
