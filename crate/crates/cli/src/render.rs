//! Plain-text rendering of report objects: nested keys are flattened into
//! indented `key: value` lines, in the same (sorted) key order as the JSON
//! output.

use serde_json::Value;

pub fn render_text(value: &Value) -> String {
    let mut out = String::new();
    render_into(value, 0, &mut out);
    out
}

fn render_into(value: &Value, indent: usize, out: &mut String) {
    match value {
        Value::Object(map) => {
            for (key, inner) in map {
                match inner {
                    Value::Object(_) | Value::Array(_) if !is_short(inner) => {
                        out.push_str(&format!("{}{}:\n", "  ".repeat(indent), key));
                        render_into(inner, indent + 1, out);
                    }
                    _ => {
                        out.push_str(&format!(
                            "{}{}: {}\n",
                            "  ".repeat(indent),
                            key,
                            compact(inner)
                        ));
                    }
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                if is_short(item) {
                    out.push_str(&format!("{}- {}\n", "  ".repeat(indent), compact(item)));
                } else {
                    out.push_str(&format!("{}-\n", "  ".repeat(indent)));
                    render_into(item, indent + 1, out);
                }
            }
        }
        other => out.push_str(&format!("{}{}\n", "  ".repeat(indent), compact(other))),
    }
}

fn is_short(value: &Value) -> bool {
    match value {
        Value::Array(items) => items.iter().all(|v| !v.is_object() && !v.is_array()),
        Value::Object(_) => false,
        _ => true,
    }
}

fn compact(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
