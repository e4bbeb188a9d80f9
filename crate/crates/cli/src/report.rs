//! Structured results, their JSON encoding and plain-text rendering.

use std::collections::BTreeMap;
use std::fmt::Write;

use formanifold::{pq_string, Error, Obstruction, Rational};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::parse::{InputError, ParseError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_ILL_FORMED: i32 = 3;
pub const EXIT_PRECONDITION: i32 = 4;
pub const EXIT_LIMIT: i32 = 5;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorEntry {
    pub code: String,
    pub message: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub order: usize,
    pub results: Value,
    pub errors: Vec<ErrorEntry>,
}

impl Report {
    pub fn new(command: &str, order: usize) -> Self {
        Report {
            command: command.into(),
            inputs: BTreeMap::new(),
            order,
            results: Value::Object(Default::default()),
            errors: Vec::new(),
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) {
        self.inputs.insert(key.into(), value.into());
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        if let Value::Object(map) = &mut self.results {
            map.insert(key.into(), value.into());
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

pub fn rationals(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(|r| Value::String(pq_string(r))).collect())
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::IllFormedMorphism { .. } => EXIT_ILL_FORMED,
        Error::LimitExceeded(_) | Error::PrecisionExhausted => EXIT_LIMIT,
        _ => EXIT_PRECONDITION,
    }
}

pub fn obstruction_detail(o: &Obstruction) -> Value {
    match o {
        Obstruction::KernelNotSurjective { witness, label } => {
            json!({ "obstruction": "KernelNotSurjective", "label": label, "witness": rationals(witness) })
        }
        Obstruction::OutsideImage { component } => {
            json!({ "obstruction": "OutsideImage", "component": component })
        }
        Obstruction::NonFormalCorrection { component } => {
            json!({ "obstruction": "NonFormalCorrection", "component": component })
        }
    }
}

pub fn library_entry(e: &Error) -> ErrorEntry {
    let detail = match e {
        Error::NotStandardizable(o) => Some(obstruction_detail(o)),
        _ => None,
    };
    ErrorEntry {
        code: e.code().into(),
        message: e.to_string(),
        detail,
    }
}

pub fn parse_entry(e: &ParseError) -> ErrorEntry {
    ErrorEntry {
        code: "ParseError".into(),
        message: e.to_string(),
        detail: Some(json!({ "line": e.line, "column": e.col })),
    }
}

/// Records the error and returns its exit code.
pub fn record(report: &mut Report, e: &InputError) -> i32 {
    match e {
        InputError::Parse(p) => {
            report.errors.push(parse_entry(p));
            EXIT_PARSE
        }
        InputError::Library(l) => {
            report.errors.push(library_entry(l));
            exit_code(l)
        }
    }
}

/// Indented `key: value` text. Arrays of strings print one per line.
pub fn render_text(report: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} (order {})", report.command, report.order);
    if let Value::Object(map) = &report.results {
        for (k, v) in map {
            write_value(&mut out, k, v, 1);
        }
    }
    for e in &report.errors {
        let _ = writeln!(out, "error [{}]: {}", e.code, e.message);
        if let Some(Value::Object(d)) = &e.detail {
            for (k, v) in d {
                write_value(&mut out, k, v, 1);
            }
        }
    }
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        _ => None,
    }
}

fn write_value(out: &mut String, key: &str, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    if let Some(s) = scalar(v) {
        let _ = writeln!(out, "{pad}{key}: {s}");
        return;
    }
    match v {
        Value::Array(items) if items.iter().all(|i| scalar(i).is_some()) => {
            let flat: Vec<String> = items.iter().filter_map(scalar).collect();
            if flat.iter().any(|s| s.contains(' ')) {
                let _ = writeln!(out, "{pad}{key}:");
                for s in flat {
                    let _ = writeln!(out, "{pad}  {s}");
                }
            } else {
                let _ = writeln!(out, "{pad}{key}: ({})", flat.join(", "));
            }
        }
        Value::Array(items) => {
            let _ = writeln!(out, "{pad}{key}:");
            for (i, item) in items.iter().enumerate() {
                write_value(out, &format!("[{}]", i + 1), item, depth + 1);
            }
        }
        Value::Object(map) => {
            let _ = writeln!(out, "{pad}{key}:");
            for (k, v) in map {
                write_value(out, k, v, depth + 1);
            }
        }
        _ => unreachable!("scalars handled above"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use formanifold::rat;

    #[test]
    fn json_roundtrip() {
        let mut r = Report::new("analyze", 8);
        r.input("point", rationals(&[rat(-1, 3), rat(2, 1)]));
        r.set(
            "rank_triple",
            json!({ "total": 2, "reduced": 1, "formal": 0, "mixed": 1 }),
        );
        r.errors
            .push(library_entry(&Error::NotStandardizable(Box::new(
                Obstruction::KernelNotSurjective {
                    witness: vec![rat(1, 1)],
                    label: "y1".into(),
                },
            ))));
        let text = r.to_json();
        assert!(text.contains("\"-1/3\"") && text.contains("\"2/1\""));
        assert_eq!(Report::from_json(&text).unwrap(), r);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(
            exit_code(&Error::IllFormedMorphism {
                component: "y1".into(),
                reason: "c".into()
            }),
            3
        );
        assert_eq!(exit_code(&Error::SingularDifferential), 4);
        assert_eq!(exit_code(&Error::NotConstantRank("m".into())), 4);
        assert_eq!(exit_code(&Error::LimitExceeded("cap".into())), 5);
    }

    #[test]
    fn text_layout() {
        let mut r = Report::new("invert", 5);
        r.set("inverse", vec!["u1 = x1 - y1^2".to_string()]);
        r.set("base", rationals(&[rat(0, 1)]));
        assert_eq!(
            render_text(&r),
            "invert (order 5)\n  base: (0/1)\n  inverse:\n    u1 = x1 - y1^2\n"
        );
    }
}
