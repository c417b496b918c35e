//! Human-readable rendering of a JSON report, field for field.

use serde_json::Value;

pub fn human(report: &Value) -> String {
    let mut out = String::new();
    match report {
        Value::Object(_) => fields(report, 0, &mut out),
        other => line(0, &scalar(other), &mut out),
    }
    out
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => "none".to_string(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn line(indent: usize, text: &str, out: &mut String) {
    out.push_str(&" ".repeat(indent));
    out.push_str(text);
    out.push('\n');
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn fields(v: &Value, indent: usize, out: &mut String) {
    let Value::Object(map) = v else { return };
    for (key, value) in map {
        match value {
            Value::Array(items) if items.iter().all(is_scalar) => {
                let joined: Vec<String> = items.iter().map(scalar).collect();
                line(indent, &format!("{key}: [{}]", joined.join(", ")), out);
            }
            Value::Array(items) => {
                line(indent, &format!("{key}:"), out);
                for item in items {
                    item_block(item, indent + 2, out);
                }
            }
            Value::Object(_) => {
                line(indent, &format!("{key}:"), out);
                fields(value, indent + 2, out);
            }
            _ => line(indent, &format!("{key}: {}", scalar(value)), out),
        }
    }
}

fn item_block(item: &Value, indent: usize, out: &mut String) {
    match item {
        Value::Object(_) => {
            let mut inner = String::new();
            fields(item, indent + 2, &mut inner);
            // Replace the first line's indentation with a bullet.
            let bullet = format!("{}- ", " ".repeat(indent));
            out.push_str(&bullet);
            if inner.is_empty() {
                out.push_str("{}\n");
            }
            out.push_str(inner.trim_start_matches(' '));
        }
        Value::Array(items) => {
            line(indent, "-", out);
            for inner in items {
                item_block(inner, indent + 2, out);
            }
        }
        other => line(indent, &format!("- {}", scalar(other)), out),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn renders_nested_reports() {
        let v = json!({
            "mode": "lo",
            "levels": [{"k": 1, "count": 4}, {"k": 2, "count": 8}],
            "sizes": [5, 13],
            "certificate": null,
        });
        assert_eq!(
            human(&v),
            "mode: lo\nlevels:\n  - k: 1\n    count: 4\n  - k: 2\n    count: 8\nsizes: [5, 13]\ncertificate: none\n"
        );
    }
}
