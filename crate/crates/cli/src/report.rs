//! Machine-readable run reports.
//!
//! JSON output has the fixed top-level keys `command`, `inputs`, `result`,
//! `caveats`; serde_json with default (sorted) maps keeps it byte-stable
//! across runs. CSV rows print floats with 17 significant digits.

use serde_json::{json, Map, Value};

/// Deterministic float formatting: 17 significant digits, scientific.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub struct RunReport {
    pub command: String,
    pub inputs: Map<String, Value>,
    pub result: Value,
    pub caveats: Vec<String>,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        RunReport {
            command: command.to_string(),
            inputs: Map::new(),
            result: Value::Null,
            caveats: Vec::new(),
        }
    }

    pub fn input(mut self, key: &str, value: Value) -> Self {
        self.inputs.insert(key.to_string(), value);
        self
    }

    pub fn result(mut self, value: Value) -> Self {
        self.result = value;
        self
    }

    pub fn caveat(mut self, note: &str) -> Self {
        self.caveats.push(note.to_string());
        self
    }

    pub fn caveats(mut self, notes: &[String]) -> Self {
        self.caveats.extend(notes.iter().cloned());
        self
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "inputs": self.inputs,
            "result": self.result,
            "caveats": self.caveats,
        })
    }
}

/// A CSV block: header plus rows, all strings preformatted.
pub struct Csv {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Csv {
    pub fn new(header: Vec<&'static str>) -> Self {
        Csv { header, rows: Vec::new() }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        assert_eq!(cells.len(), self.header.len(), "csv row width");
        self.rows.push(cells);
    }

    pub fn render(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}
