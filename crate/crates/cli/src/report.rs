use serde_json::{Map, Value};

use torelli::exact::rational_to_json;
use torelli::{Matrix, QuadExt, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// An ordered list of named fields, printed as aligned text or one JSON object.
#[derive(Debug, Default)]
pub struct Report {
    fields: Vec<(String, Value)>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report::default().with("command", command)
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.fields.push((key.to_string(), value.into()));
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let map: Map<String, Value> = self.fields.iter().cloned().collect();
                let mut s = serde_json::to_string(&Value::Object(map)).expect("JSON values serialize");
                s.push('\n');
                s
            }
            Format::Text => {
                let width = self.fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                let mut s = String::new();
                for (k, v) in &self.fields {
                    let shown = match v {
                        Value::String(text) => text.clone(),
                        other => other.to_string(),
                    };
                    s.push_str(&format!("{k:<width$}  {shown}\n"));
                }
                s
            }
        }
    }
}

pub fn rational(q: &Rational) -> Value {
    rational_to_json(q)
}

pub fn rationals(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational).collect())
}

pub fn matrix(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|i| rationals(m.row(i))).collect())
}

pub fn quad(v: &[QuadExt]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}
