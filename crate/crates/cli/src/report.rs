use serde::Serialize;
use serde_json::{json, Map, Value};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool) -> Self {
        Check { name: name.into(), pass }
    }
}

/// Everything a subcommand produces. `text` is the human rendering and is
/// never serialized; wall time is kept out of the report so that JSON output
/// is a pure function of the parameters.
#[derive(Debug)]
pub struct RunReport {
    pub subcommand: String,
    pub parameters: Value,
    pub checks: Vec<Check>,
    pub artifacts: Value,
    pub text: Vec<String>,
}

impl RunReport {
    pub fn new(subcommand: &str, parameters: Value) -> Self {
        RunReport { subcommand: subcommand.into(), parameters, checks: vec![], artifacts: Value::Null, text: vec![] }
    }

    pub fn check(&mut self, name: impl Into<String>, pass: bool) {
        self.checks.push(Check::new(name, pass));
    }

    pub fn artifacts<T: Serialize>(&mut self, value: &T) -> serde_json::Result<()> {
        self.artifacts = serde_json::to_value(value)?;
        Ok(())
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.text.push(s.into());
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> Value {
        canonical(json!({
            "tool": "l2dz",
            "version": env!("CARGO_PKG_VERSION"),
            "schema": SCHEMA_VERSION,
            "subcommand": self.subcommand,
            "parameters": self.parameters,
            "pass": self.pass(),
            "checks": self.checks,
            "artifacts": self.artifacts,
        }))
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for l in &self.text {
            out.push_str(l);
            out.push('\n');
        }
        if !self.checks.is_empty() {
            if !self.text.is_empty() {
                out.push('\n');
            }
            let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
            for c in &self.checks {
                out.push_str(&format!("{:<width$}  {}\n", c.name, if c.pass { "PASS" } else { "FAIL" }));
            }
        }
        if !self.checks.is_empty() {
            out.push_str(&format!("{}: {}\n", self.subcommand, if self.pass() { "PASS" } else { "FAIL" }));
        }
        out
    }
}

/// Objects with keys in sorted order, whatever map type serde_json was built with.
pub fn canonical(v: Value) -> Value {
    match v {
        Value::Object(m) => {
            let mut entries: Vec<(String, Value)> = m.into_iter().collect();
            entries.sort_by(|a, b| a.0.cmp(&b.0));
            Value::Object(entries.into_iter().map(|(k, v)| (k, canonical(v))).collect::<Map<_, _>>())
        }
        Value::Array(a) => Value::Array(a.into_iter().map(canonical).collect()),
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_sorted() {
        let v = canonical(json!({"b": 1, "a": {"d": 2, "c": 3}}));
        assert_eq!(v.to_string(), r#"{"a":{"c":3,"d":2},"b":1}"#);
    }

    #[test]
    fn empty_checks_pass() {
        assert!(RunReport::new("x", Value::Null).pass());
    }
}
