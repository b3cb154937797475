use serde_json::Value;

/// Indented text rendering of a JSON report.
pub fn render(v: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, v, 0);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(if *b { "yes" } else { "no" }.into()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|x| scalar(x).is_some() && !x.is_array()) => {
            let parts: Vec<String> = items.iter().filter_map(scalar).collect();
            Some(format!("[{}]", parts.join(", ")))
        }
        Value::Array(items) if items.iter().all(|x| x.as_array().is_some_and(|r| r.iter().all(Value::is_number))) => {
            let rows: Vec<String> = items.iter().filter_map(scalar).collect();
            Some(format!("[{}]", rows.join(", ")))
        }
        Value::Object(map) if is_element(map) => {
            let join = |k: &str| map[k].as_array().unwrap().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
            Some(format!("({}; {})", join("free"), join("torsion")))
        }
        _ => None,
    }
}

fn is_element(map: &serde_json::Map<String, Value>) -> bool {
    map.len() == 2 && ["free", "torsion"].iter().all(|k| map.get(*k).is_some_and(Value::is_array))
}

fn write_value(out: &mut String, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) if scalar(v).is_none() => {
            for (k, x) in map {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        write_value(out, x, indent + 1);
                    }
                }
            }
        }
        Value::Array(items) if scalar(v).is_none() => {
            for x in items {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        write_value(out, x, indent + 1);
                    }
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", scalar(v).unwrap_or_default())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn renders_nested_reports() {
        let v = json!({"rank": 0, "torsion": [2], "w2": {"free": [], "torsion": [1]}, "ok": true,
                       "rows": [{"a": 1}], "matrix": [[0, 1], [1, 0]]});
        let text = render(&v);
        assert!(text.contains("rank: 0\n"));
        assert!(text.contains("torsion: [2]\n"));
        assert!(text.contains("w2: (; 1)\n"));
        assert!(text.contains("ok: yes\n"));
        assert!(text.contains("rows:\n  -\n    a: 1\n"));
        assert!(text.contains("matrix: [[0, 1], [1, 0]]\n"));
    }
}
