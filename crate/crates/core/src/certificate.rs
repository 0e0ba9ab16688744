//! JSON certificates written next to every CLI artifact.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::Result;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema_version: u32,
    pub command: Vec<String>,
    pub seed: Option<u64>,
    pub inputs: Map<String, Value>,
    /// Each entry is `{"method": "oracle" | "formula" | "search", "value": …}`.
    pub results: Map<String, Value>,
    pub discrepancies: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, f64>>,
}

impl Certificate {
    pub fn new(command: Vec<String>, seed: Option<u64>) -> Self {
        Certificate {
            schema_version: SCHEMA_VERSION,
            command,
            seed,
            inputs: Map::new(),
            results: Map::new(),
            discrepancies: Vec::new(),
            timings: Some(BTreeMap::new()),
        }
    }

    pub fn input(&mut self, key: &str, value: impl Serialize) -> Result<()> {
        self.inputs.insert(key.into(), serde_json::to_value(value)?);
        Ok(())
    }

    pub fn result(&mut self, key: &str, method: &str, value: impl Serialize) -> Result<()> {
        let mut entry = Map::new();
        entry.insert("method".into(), Value::String(method.into()));
        entry.insert("value".into(), serde_json::to_value(value)?);
        self.results.insert(key.into(), Value::Object(entry));
        Ok(())
    }

    pub fn discrepancy(&mut self, note: impl Into<String>) {
        self.discrepancies.push(note.into());
    }

    pub fn timing(&mut self, key: &str, ms: f64) {
        if let Some(t) = self.timings.as_mut() {
            t.insert(key.into(), ms);
        }
    }

    /// Drops the timings block and every `elapsed_ms` field so that equal
    /// inputs give byte-identical output.
    pub fn make_deterministic(&mut self) {
        self.timings = None;
        for v in self.results.values_mut().chain(self.inputs.values_mut()) {
            strip_elapsed(v);
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()? + "\n")?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<Self> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }
}

fn strip_elapsed(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.remove("elapsed_ms");
            map.values_mut().for_each(strip_elapsed);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_elapsed),
        _ => {}
    }
}

/// Rounds to 12 significant decimal digits.
pub fn sig12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}
