//! The structured result document every command produces.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Serialize)]
pub struct Timing {
    pub elapsed_ms: u128,
}

/// Key order is fixed by field order; maps are sorted, so two runs with the
/// same inputs serialize identically apart from `timing`.
#[derive(Debug, Clone, Serialize)]
pub struct ResultDocument {
    pub command: String,
    pub params: BTreeMap<String, Value>,
    pub citation: Vec<String>,
    pub values: Value,
    pub witnesses: Vec<Vec<String>>,
    pub timing: Timing,
}

impl ResultDocument {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            params: BTreeMap::new(),
            citation: Vec::new(),
            values: Value::Null,
            witnesses: Vec::new(),
            timing: Timing { elapsed_ms: 0 },
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document values are plain JSON")
    }
}
