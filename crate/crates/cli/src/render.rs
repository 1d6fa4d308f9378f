//! Human-readable rendering of the JSON form, so both formats carry the
//! same data.

use std::fmt::Write;

use serde_json::Value;

fn is_group(map: &serde_json::Map<String, Value>) -> bool {
    map.len() == 3 && map.contains_key("rank") && map.contains_key("invariant_factors") && map.contains_key("text")
}

/// Renders scalars, groups and nested arrays of scalars on one line.
fn inline(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(if s.is_empty() { "\"\"".into() } else { s.clone() }),
        Value::Object(map) if is_group(map) => map["text"].as_str().map(str::to_string),
        // a class group, possibly not finitely generated
        Value::Object(map) if map.get("status").is_some_and(Value::is_string) && map.len() <= 2 => match map.get("group") {
            Some(g) => inline(g),
            None => map["status"].as_str().map(|s| s.replace('_', " ")),
        },
        Value::Object(map) if map.is_empty() => Some("{}".into()),
        Value::Array(items) => {
            let parts: Option<Vec<String>> = items
                .iter()
                .map(|item| match item {
                    Value::Object(_) => None,
                    Value::Array(_) => inline(item),
                    other => inline(other),
                })
                .collect();
            parts.map(|p| format!("[{}]", p.join(", ")))
        }
        Value::Object(_) => None,
    }
}

fn write_value(out: &mut String, v: &Value, indent: usize) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (key, value) in map {
                match inline(value) {
                    Some(s) => writeln!(out, "{pad}{key}: {s}").unwrap(),
                    None => {
                        writeln!(out, "{pad}{key}:").unwrap();
                        write_value(out, value, indent + 2);
                    }
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match inline(item) {
                    Some(s) => writeln!(out, "{pad}- {s}").unwrap(),
                    None => {
                        writeln!(out, "{pad}-").unwrap();
                        write_value(out, item, indent + 2);
                    }
                }
            }
        }
        other => writeln!(out, "{pad}{}", inline(other).unwrap_or_default()).unwrap(),
    }
}

pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, v, 0);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn nested_layout() {
        let v = json!({
            "group": {"rank": 2, "invariant_factors": ["2"], "text": "Z/2 x Z^2"},
            "cl": {"status": "not_finitely_generated"},
            "matrix": [[1, 0], [0, 1]],
            "steps": [{"a": 1}, {"a": null}],
            "flag": true,
        });
        let text = render_text(&v);
        assert_eq!(
            text,
            "cl: not finitely generated\nflag: true\ngroup: Z/2 x Z^2\nmatrix: [[1, 0], [0, 1]]\nsteps:\n  -\n    a: 1\n  -\n    a: none\n"
        );
    }
}
