use serde::Serialize;
use serde_json::{json, Map, Value};

/// One named verdict with an optional witness.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool) -> Self {
        Check {
            name: name.into(),
            passed,
            witness: None,
        }
    }

    pub fn with_witness(name: impl Into<String>, passed: bool, witness: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            witness: (!passed).then(|| witness.into()),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub result: Value,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<Check>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

impl Report {
    pub fn new(command: &str, result: Value, checks: Vec<Check>) -> Self {
        let passed = checks.iter().all(|c| c.passed);
        Report {
            command: command.to_string(),
            result,
            checks,
            passed,
            timing_ms: None,
        }
    }

    pub fn error(command: &str, e: &gable_core::Error) -> Self {
        Report {
            command: command.to_string(),
            result: json!({ "error": { "kind": e.kind(), "message": e.to_string() } }),
            checks: Vec::new(),
            passed: false,
            timing_ms: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// Indented `key: value` rendering of the JSON form.
    pub fn to_text(&self) -> String {
        let value = serde_json::to_value(self).expect("reports serialize");
        let mut out = String::new();
        render(&value, 0, &mut out);
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(if *b { "yes" } else { "no" }.into()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => Some(format!(
            "[{}]",
            a.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")
        )),
        _ => None,
    }
}

fn render_map(m: &Map<String, Value>, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    for (k, v) in m {
        match scalar(v) {
            Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
            None => {
                out.push_str(&format!("{pad}{k}:\n"));
                render(v, depth + 1, out);
            }
        }
    }
}

fn render(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => render_map(m, depth, out),
        Value::Array(items) => {
            for item in items {
                match scalar(item) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        render(item, depth + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_mirrors_json() {
        let r = Report::new(
            "demo",
            json!({"group": "Z", "orders": [0, 2], "nested": {"ok": true}}),
            vec![Check::new("c", true)],
        );
        let text = r.to_text();
        assert!(text.contains("group: Z"));
        assert!(text.contains("orders: [0, 2]"));
        assert!(text.contains("  ok: yes"));
        assert!(r.passed);
        let failing = Check::with_witness("c", false, "counterexample");
        assert_eq!(failing.witness.as_deref(), Some("counterexample"));
        assert_eq!(Check::with_witness("c", true, "unused").witness, None);
    }
}
