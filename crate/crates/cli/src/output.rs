//! Output plumbing: text vs structured JSON, with deterministic field
//! order and wire-syntax rationals.

use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

/// A small ordered key-value result that renders either as aligned text
/// lines or as a JSON object (insertion order preserved).
pub struct Rendering {
    fields: Vec<(String, Value)>,
}

impl Rendering {
    pub fn new() -> Self {
        Rendering { fields: Vec::new() }
    }

    pub fn push(&mut self, key: &str, value: impl Into<Value>) {
        self.fields.push((key.to_string(), value.into()));
    }

    pub fn print(&self, format: Format) {
        match format {
            Format::Text => {
                for (k, v) in &self.fields {
                    println!("{k}: {}", text_value(v));
                }
            }
            Format::Structured => {
                let map: Map<String, Value> = self.fields.iter().cloned().collect();
                println!(
                    "{}",
                    serde_json::to_string_pretty(&Value::Object(map)).expect("serializes")
                );
            }
        }
    }
}

fn text_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => {
            let inner: Vec<String> = items.iter().map(text_value).collect();
            inner.join("; ")
        }
        other => other.to_string(),
    }
}
