//! Text and JSON reports.

use serde::Serialize;
use serde_json::{json, Map, Value};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, PartialEq)]
struct Item {
    key: String,
    value: Value,
    module: bool,
}

/// An ordered list of results plus an optional pass/fail verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    pub digest: String,
    pub seed: u64,
    items: Vec<Item>,
    checks: Vec<(String, bool)>,
    pub trunc_probe: Option<bool>,
}

impl Report {
    pub fn new(command: impl Into<String>, digest: impl Into<String>, seed: u64) -> Self {
        Report {
            command: command.into(),
            digest: digest.into(),
            seed,
            items: Vec::new(),
            checks: Vec::new(),
            trunc_probe: None,
        }
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl Serialize) {
        let value = serde_json::to_value(value).expect("report values serialize");
        self.items.push(Item { key: key.into(), value, module: false });
    }

    /// Records a module result by its canonical generator list.
    pub fn push_module(&mut self, key: impl Into<String>, generators: Vec<String>) {
        self.items.push(Item { key: key.into(), value: json!(generators), module: true });
    }

    pub fn check(&mut self, name: impl Into<String>, holds: bool) {
        self.checks.push((name.into(), holds));
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.items.iter().find(|i| i.key == key).map(|i| &i.value)
    }

    /// `None` when the command checks nothing.
    pub fn verdict(&self) -> Option<bool> {
        if self.checks.is_empty() {
            None
        } else {
            Some(self.checks.iter().all(|(_, h)| *h))
        }
    }

    pub fn module_results(&self) -> Vec<(&str, &Value)> {
        self.items.iter().filter(|i| i.module).map(|i| (i.key.as_str(), &i.value)).collect()
    }

    pub fn exit_code(&self) -> i32 {
        if self.verdict() == Some(false) || self.trunc_probe == Some(false) {
            1
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        let mut results = Map::new();
        for i in &self.items {
            results.insert(i.key.clone(), i.value.clone());
        }
        let checks: Vec<Value> = self.checks.iter().map(|(n, h)| json!({ "name": n, "holds": h })).collect();
        let verdict = match self.verdict() {
            None => Value::Null,
            Some(true) => json!("pass"),
            Some(false) => json!("fail"),
        };
        let doc = json!({
            "schema": SCHEMA,
            "command": self.command,
            "input_digest": self.digest,
            "seed": self.seed,
            "results": Value::Object(results),
            "checks": checks,
            "verdict": verdict,
            "trunc_probe": self.trunc_probe,
        });
        serde_json::to_string_pretty(&doc).expect("json")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        out.push_str(&format!("input: sha256:{}\n", self.digest));
        out.push_str(&format!("seed: {}\n", self.seed));
        for i in &self.items {
            out.push_str(&format!("{}: {}\n", i.key, render(&i.value)));
        }
        for (name, holds) in &self.checks {
            out.push_str(&format!("check {name}: {}\n", if *holds { "ok" } else { "FAILED" }));
        }
        if let Some(t) = self.trunc_probe {
            out.push_str(&format!("trunc-probe: {}\n", if t { "identical" } else { "MISMATCH" }));
        }
        match self.verdict() {
            Some(true) => out.push_str("verdict: PASS\n"),
            Some(false) => out.push_str("verdict: FAIL\n"),
            None => {}
        }
        out
    }
}

fn render(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let parts: Vec<String> = a.iter().map(render).collect();
            format!("[{}]", parts.join(", "))
        }
        other => other.to_string(),
    }
}
