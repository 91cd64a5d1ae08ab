//! Human-readable rendering of JSON reports.

use serde_json::Value;

use crate::abelian::FgAbelianGroup;

/// Abelian groups in their JSON form are printed as `Z^r ⊕ Z_d…`.
fn as_group(v: &Value) -> Option<String> {
    let o = v.as_object()?;
    if o.len() != 2 || !o.contains_key("free_rank") || !o.contains_key("invariant_factors") {
        return None;
    }
    serde_json::from_value::<FgAbelianGroup>(v.clone())
        .ok()
        .map(|g| g.to_string())
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.is_empty() => Some("[]".into()),
        Value::Object(o) if o.is_empty() => Some("{}".into()),
        Value::Array(a) if a.iter().all(|x| matches!(x, Value::Number(_) | Value::Bool(_))) => Some(format!(
            "[{}]",
            a.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
        )),
        _ => as_group(v),
    }
}

fn walk(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(o) => {
            for (k, x) in o {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        walk(x, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        walk(x, indent + 1, out);
                    }
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", scalar(v).unwrap_or_default())),
    }
}

/// Indented `key: value` text of a report.
pub fn human(v: &Value) -> String {
    let mut out = String::new();
    match scalar(v) {
        Some(s) => {
            out.push_str(&s);
            out.push('\n');
        }
        None => walk(v, 0, &mut out),
    }
    out
}
