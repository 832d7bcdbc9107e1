//! Report assembly and emission.
//!
//! JSON is canonical: keys sorted (serde_json's default map), big counts as
//! decimal strings, and no wall-clock fields — identical inputs produce
//! byte-identical output. CSV flattens one row per sequence/violation/witness.
//! The table format is human-oriented and carries the elapsed time.

use std::time::Duration;

use serde_json::{json, Map, Value};
use zerosum_core::GroupSpec;

use crate::Format;

pub fn obj(pairs: Vec<(&str, Value)>) -> Value {
    let mut map = Map::new();
    for (k, v) in pairs {
        map.insert(k.to_string(), v);
    }
    Value::Object(map)
}

pub fn group_json(group: &GroupSpec) -> Value {
    json!({
        "invariant_factors": group.invariant_factors(),
        "exponent": group.exponent(),
        "rank": group.rank(),
    })
}

pub fn group_literal(group: &GroupSpec) -> String {
    group
        .invariant_factors()
        .iter()
        .map(|f| format!("C{f}"))
        .collect::<Vec<_>>()
        .join("x")
}

pub fn emit(report: &Value, format: Format, elapsed: Duration) -> String {
    match format {
        Format::Json => format!("{report}\n"),
        Format::Csv => to_csv(report),
        Format::Table => to_table(report, elapsed),
    }
}

fn csv_quote(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

fn csv_row(fields: &[String]) -> String {
    let quoted: Vec<String> = fields.iter().map(|f| csv_quote(f)).collect();
    format!("{}\n", quoted.join(","))
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// One row per item for list-bearing reports, a single row otherwise.
fn to_csv(report: &Value) -> String {
    let payload = &report["payload"];
    let list_keys = ["violations", "family_failures", "witnesses", "groups"];
    for key in list_keys {
        if let Some(items) = payload[key].as_array() {
            if items.is_empty() {
                continue;
            }
            let mut columns: Vec<String> = items[0]
                .as_object()
                .map(|o| o.keys().cloned().collect())
                .unwrap_or_default();
            columns.sort();
            let mut out = csv_row(&columns);
            for item in items {
                let row: Vec<String> = columns.iter().map(|c| scalar(&item[c])).collect();
                out.push_str(&csv_row(&row));
            }
            return out;
        }
    }
    // Scalar payload: one header row and one value row over sorted keys.
    let map = payload.as_object().cloned().unwrap_or_default();
    let columns: Vec<String> = map
        .iter()
        .filter(|(_, v)| !v.is_object() && !v.is_array())
        .map(|(k, _)| k.clone())
        .collect();
    let row: Vec<String> = columns.iter().map(|c| scalar(&map[c])).collect();
    format!("{}{}", csv_row(&columns), csv_row(&row))
}

fn table_lines(value: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                match v {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        table_lines(v, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", scalar(v))),
                }
            }
        }
        Value::Array(items) => {
            if items.is_empty() {
                out.push_str(&format!("{pad}(none)\n"));
            }
            for item in items {
                match item {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}-\n"));
                        table_lines(item, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}- {}\n", scalar(item))),
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other))),
    }
}

fn to_table(report: &Value, elapsed: Duration) -> String {
    let mut out = String::new();
    if let Some(kind) = report["kind"].as_str() {
        out.push_str(&format!("{kind}\n"));
    }
    table_lines(&report["payload"], 0, &mut out);
    out.push_str(&format!("elapsed: {elapsed:?}\n"));
    out
}
