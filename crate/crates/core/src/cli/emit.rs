use serde_json::Value;

use super::Format;

/// Renders a report. JSON is pretty-printed with sorted keys; text is one
/// `path = value` line per leaf.
pub fn emit(report: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("values serialize");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut out = String::new();
            flatten("", report, &mut out);
            out
        }
    }
}

fn flatten(path: &str, v: &Value, out: &mut String) {
    let child = |k: &str| if path.is_empty() { k.to_string() } else { format!("{path}.{k}") };
    match v {
        Value::Object(m) if !m.is_empty() => m.iter().for_each(|(k, x)| flatten(&child(k), x, out)),
        Value::Array(a) if a.iter().any(|x| x.is_object() || x.is_array()) => {
            a.iter().enumerate().for_each(|(k, x)| flatten(&child(&k.to_string()), x, out))
        }
        Value::String(s) => out.push_str(&format!("{path} = {s}\n")),
        other => out.push_str(&format!("{path} = {other}\n")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn text_lines() {
        let v = json!({"status": "realizable", "tame": {"e": 3, "f": 1}, "list": [1, 2]});
        assert_eq!(emit(&v, Format::Text), "list = [1,2]\nstatus = realizable\ntame.e = 3\ntame.f = 1\n");
        assert!(emit(&v, Format::Json).contains("\"status\": \"realizable\""));
    }
}
