//! Plain-text tables rendered from the JSON reports.

use std::fmt::Write;

use serde_json::{Map, Value};

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Array(items) if items.iter().all(is_scalar) => {
            format!("({})", items.iter().map(scalar).collect::<Vec<_>>().join(", "))
        }
        other => other.to_string(),
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn is_grid(items: &[Value]) -> bool {
    !items.is_empty()
        && items
            .iter()
            .all(|r| matches!(r, Value::Array(c) if c.iter().all(is_scalar)))
}

fn is_records(items: &[Value]) -> bool {
    !items.is_empty() && items.iter().all(Value::is_object)
}

fn aligned(out: &mut String, indent: &str, rows: &[Vec<String>]) {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    for row in rows {
        let line: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(c, cell)| format!("{cell:<w$}", w = widths[c]))
            .collect();
        let _ = writeln!(out, "{indent}{}", line.join("  ").trim_end());
    }
}

fn records(out: &mut String, indent: &str, items: &[Value]) {
    let mut keys: Vec<&str> = Vec::new();
    for item in items {
        for k in item.as_object().expect("record").keys() {
            if !keys.contains(&k.as_str()) {
                keys.push(k);
            }
        }
    }
    let mut rows = vec![keys.iter().map(|k| k.to_string()).collect::<Vec<_>>()];
    for item in items {
        let obj = item.as_object().expect("record");
        rows.push(
            keys.iter()
                .map(|k| obj.get(*k).map_or_else(String::new, scalar))
                .collect(),
        );
    }
    aligned(out, indent, &rows);
}

fn object(out: &mut String, indent: &str, map: &Map<String, Value>) {
    for (k, v) in map {
        match v {
            Value::Object(inner) => {
                let _ = writeln!(out, "{indent}{k}:");
                object(out, &format!("{indent}  "), inner);
            }
            Value::Array(items) if is_grid(items) => {
                let _ = writeln!(out, "{indent}{k}:");
                let rows: Vec<Vec<String>> = items
                    .iter()
                    .map(|r| r.as_array().expect("grid row").iter().map(scalar).collect())
                    .collect();
                aligned(out, &format!("{indent}  "), &rows);
            }
            Value::Array(items) if is_records(items) => {
                let _ = writeln!(out, "{indent}{k}:");
                records(out, &format!("{indent}  "), items);
            }
            Value::Array(items) if !items.iter().all(is_scalar) => {
                let _ = writeln!(out, "{indent}{k}:");
                for item in items {
                    let _ = writeln!(out, "{indent}  {}", scalar(item));
                }
            }
            _ => {
                let _ = writeln!(out, "{indent}{k}: {}", scalar(v));
            }
        }
    }
}

/// Renders a report as indented `key: value` lines, matrices as aligned grids and lists of
/// records as tables.
pub fn to_text(v: &Value) -> String {
    let mut out = String::new();
    match v {
        Value::Object(map) => object(&mut out, "", map),
        other => {
            let _ = writeln!(out, "{}", scalar(other));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn layouts() {
        let v = json!({
            "m": 4,
            "sigma": [1, 1],
            "matrix": [["x", "0"], ["-y", "x^2"]],
            "rows": [{"label": "f_1", "poly": "T1^2"}, {"label": "g_{0,1}", "poly": "x*T1"}],
            "reg": {"formula": "sd"}
        });
        let text = to_text(&v);
        assert!(text.contains("m: 4\n"));
        assert!(text.contains("sigma: (1, 1)\n"));
        assert!(text.contains("  x   0\n"));
        assert!(text.contains("  label    poly\n"));
        assert!(text.contains("reg:\n  formula: sd\n"));
    }
}
