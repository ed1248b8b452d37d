//! Rendering of run outcomes.

use serde_json::{json, Value};

use crate::Outcome;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

/// Keys are emitted in sorted order, so equal outcomes render to equal bytes.
pub fn render(outcome: &Outcome, format: Format) -> String {
    match format {
        Format::Json => {
            let doc = json!({ "backend": outcome.backend, "reports": outcome.reports });
            let mut s = serde_json::to_string_pretty(&doc).expect("values serialize");
            s.push('\n');
            s
        }
        Format::Text => outcome.reports.iter().map(text_report).collect(),
    }
}

fn text_report(r: &Value) -> String {
    let mut out = format!("line {}: {}\n", r["line"], r["query"].as_str().unwrap_or_default());
    if let Value::Object(map) = r {
        for (k, v) in map {
            if k == "line" || k == "query" || v.is_null() {
                continue;
            }
            let shown = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            out.push_str(&format!("  {k}: {shown}\n"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_skips_nulls_and_echoes_the_query() {
        let o = Outcome {
            backend: "boolean",
            reports: vec![json!({"line": 3, "query": "name c", "name": "id(X)", "witness": null})],
            failures: 0,
        };
        assert_eq!(render(&o, Format::Text), "line 3: name c\n  name: id(X)\n");
        assert!(render(&o, Format::Json).contains("\"backend\": \"boolean\""));
    }
}
