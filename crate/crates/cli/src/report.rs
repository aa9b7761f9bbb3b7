use std::collections::BTreeMap;
use std::time::Duration;

use logct_core::{Rat, TPoly, Value, ENGINE_VERSION};
use serde::Serialize;

/// Exact decimal-free serialization: always "numerator/denominator".
pub fn rat_str(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn poly_json(p: &TPoly) -> serde_json::Value {
    serde_json::Value::Array(
        p.coeffs()
            .iter()
            .map(|c| serde_json::Value::String(rat_str(c)))
            .collect(),
    )
}

pub fn value_json(v: &Value) -> serde_json::Value {
    match v {
        Value::Rat(r) => serde_json::Value::String(rat_str(r)),
        Value::Poly(p) => poly_json(p),
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, clap::ValueEnum)]
pub enum Format {
    Json,
    Text,
    Csv,
}

/// One run's machine-readable outcome. Field names are stable; reports for
/// identical command, config and engine version are byte-identical apart
/// from `elapsed_ms`.
#[derive(Serialize)]
pub struct Report {
    pub command: String,
    pub params: BTreeMap<String, String>,
    pub status: String,
    pub value: serde_json::Value,
    pub fitted_constant: Option<String>,
    pub sign_note: Option<String>,
    pub strategy: Option<String>,
    pub elapsed_ms: u128,
    pub engine_version: String,
    pub problem_hash: Option<String>,
}

impl Report {
    pub fn new(command: &str, params: BTreeMap<String, String>) -> Self {
        Report {
            command: command.to_string(),
            params,
            status: String::new(),
            value: serde_json::Value::Null,
            fitted_constant: None,
            sign_note: None,
            strategy: None,
            elapsed_ms: 0,
            engine_version: ENGINE_VERSION.to_string(),
            problem_hash: None,
        }
    }

    pub fn finish(&mut self, elapsed: Duration) {
        self.elapsed_ms = elapsed.as_millis();
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Text => self.render_text(),
            Format::Csv => self.render_csv(),
        }
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        for (k, v) in &self.params {
            out.push_str(&format!("  {} = {}\n", k, v));
        }
        out.push_str(&format!("status: {}\n", self.status));
        out.push_str(&format!("value: {}\n", flat_value(&self.value)));
        if let Some(c) = &self.fitted_constant {
            out.push_str(&format!("fitted constant: {}\n", c));
        }
        if let Some(n) = &self.sign_note {
            out.push_str(&format!("sign: {}\n", n));
        }
        if let Some(s) = &self.strategy {
            out.push_str(&format!("strategy: {}\n", s));
        }
        out.push_str(&format!(
            "elapsed: {} ms, engine {}\n",
            self.elapsed_ms, self.engine_version
        ));
        if let Some(h) = &self.problem_hash {
            out.push_str(&format!("problem hash: {}\n", h));
        }
        out
    }

    fn render_csv(&self) -> String {
        // table-like values (arrays of objects) become one row per entry
        if let serde_json::Value::Array(rows) = &self.value {
            if rows.iter().all(|r| r.is_object()) && !rows.is_empty() {
                let keys: Vec<&String> = match &rows[0] {
                    serde_json::Value::Object(m) => m.keys().collect(),
                    _ => unreachable!(),
                };
                let mut out = keys
                    .iter()
                    .map(|s| s.as_str())
                    .collect::<Vec<_>>()
                    .join(",");
                out.push('\n');
                for row in rows {
                    if let serde_json::Value::Object(m) = row {
                        let cells: Vec<String> = keys
                            .iter()
                            .map(|k| flat_value(m.get(*k).unwrap_or(&serde_json::Value::Null)))
                            .collect();
                        out.push_str(&cells.join(","));
                        out.push('\n');
                    }
                }
                return out;
            }
        }
        let mut out = String::from("command,status,value,fitted_constant,strategy\n");
        out.push_str(&format!(
            "{},{},\"{}\",{},{}\n",
            self.command,
            self.status,
            flat_value(&self.value),
            self.fitted_constant.as_deref().unwrap_or(""),
            self.strategy.as_deref().unwrap_or("")
        ));
        out
    }
}

fn flat_value(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::Null => String::new(),
        serde_json::Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
