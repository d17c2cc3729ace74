//! Rendering reports as compact JSON or as tab-separated lines.

use serde_json::Value;

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) if items.iter().all(|x| !x.is_array() && !x.is_object()) => {
            items.iter().map(scalar).collect::<Vec<_>>().join(",")
        }
        other => other.to_string(),
    }
}

fn row(v: &Value) -> String {
    match v {
        Value::Array(items) => items.iter().map(scalar).collect::<Vec<_>>().join("\t"),
        Value::Object(map) => map
            .iter()
            .map(|(k, x)| format!("{k}={}", scalar(x)))
            .collect::<Vec<_>>()
            .join("\t"),
        other => scalar(other),
    }
}

/// One line per top-level key; lists of compound values and objects get one line per
/// entry, prefixed by the key.
pub fn tsv(report: &Value) -> String {
    let mut out = String::new();
    let Value::Object(map) = report else {
        return format!("{}\n", row(report));
    };
    for (key, value) in map {
        match value {
            Value::Array(items) if items.iter().any(|x| x.is_array() || x.is_object()) => {
                for item in items {
                    out.push_str(&format!("{key}\t{}\n", row(item)));
                }
            }
            Value::Object(entries) => {
                for (k, x) in entries {
                    out.push_str(&format!("{key}\t{k}\t{}\n", row(x)));
                }
            }
            Value::Array(_) => out.push_str(&format!("{key}\t{}\n", row(value))),
            other => out.push_str(&format!("{key}\t{}\n", scalar(other))),
        }
    }
    out
}

pub fn json(report: &Value) -> String {
    format!("{report}\n")
}
