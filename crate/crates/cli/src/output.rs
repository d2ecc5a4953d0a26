//! Machine (JSON) and human (`--pretty`) renderings of command results.

use serde_json::Value;

pub fn render(value: &Value, pretty: bool) -> String {
    if !pretty {
        return value.to_string();
    }
    let Value::Object(map) = value else {
        return value.to_string();
    };
    let width = map.keys().map(String::len).max().unwrap_or(0);
    map.iter()
        .map(|(k, v)| {
            let shown = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            format!("{k:<width$}  {shown}")
        })
        .collect::<Vec<_>>()
        .join("\n")
}
