use serde_json::Value;

/// Plain-text rendering of a JSON result: scalars bare, flat lists joined
/// by commas, objects as `key: value` lines, nested lists one item per line
/// with a `-` line ahead of each object.
pub fn text(v: &Value) -> String {
    let mut out = String::new();
    block(v, 0, &mut out);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|i| !i.is_array() && !i.is_object()) => Some(
            items
                .iter()
                .map(|i| scalar(i).expect("scalar"))
                .collect::<Vec<_>>()
                .join(", "),
        ),
        _ => None,
    }
}

fn block(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    if let Some(s) = scalar(v) {
        out.push_str(&format!("{pad}{s}\n"));
        return;
    }
    match v {
        Value::Array(items) => {
            for item in items {
                if item.is_object() {
                    out.push_str(&format!("{pad}-\n"));
                }
                block(item, depth, out);
            }
        }
        Value::Object(map) => {
            for (k, val) in map {
                match scalar(val) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        block(val, depth + 1, out);
                    }
                }
            }
        }
        _ => unreachable!("scalars handled above"),
    }
}
