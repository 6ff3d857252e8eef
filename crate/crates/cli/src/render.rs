//! Plain-text rendering of the JSON documents.

use std::fmt::Write;

use serde_json::Value;

pub fn text(doc: &Value) -> String {
    let mut out = String::new();
    block(&mut out, doc, 0);
    out
}

fn is_record(v: &Value) -> bool {
    matches!(v, Value::Object(m) if m.len() == 3 && ["check", "instance", "status"].iter().all(|k| m.contains_key(*k)))
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".to_string(),
        other => other.to_string(),
    }
}

/// Short single-line form for values that fit on one line.
fn inline(v: &Value) -> Option<String> {
    match v {
        Value::Array(items) => {
            let parts: Option<Vec<String>> = items.iter().map(inline).collect();
            parts.map(|p| format!("[{}]", p.join(", ")))
        }
        Value::Object(m) if m.len() == 2 && m.contains_key("lo") && m.contains_key("hi") => {
            Some(format!("({},{})", scalar(&m["lo"]), scalar(&m["hi"])))
        }
        Value::Object(m) if m.len() == 3 && m.contains_key("lo") && m.contains_key("hi") => {
            let c = m.get("coeff").or_else(|| m.get("value"))?;
            Some(format!("{}*({},{})", scalar(c), scalar(&m["lo"]), scalar(&m["hi"])))
        }
        Value::Object(_) => None,
        other => Some(scalar(other)),
    }
}

fn block(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Array(items) if items.iter().all(is_record) => {
            for r in items {
                let status = if r["status"] == "pass" { "PASS" } else { "FAIL" };
                let _ = writeln!(out, "{pad}{status} {}: {}", scalar(&r["check"]), scalar(&r["instance"]));
            }
        }
        Value::Object(m) => {
            for (k, val) in m {
                match inline(val) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}{k}: {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}{k}:");
                        block(out, val, depth + 1);
                    }
                }
            }
        }
        Value::Array(items) => {
            for (i, item) in items.iter().enumerate() {
                match inline(item) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}- {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}[{i}]");
                        block(out, item, depth + 1);
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other));
        }
    }
}
