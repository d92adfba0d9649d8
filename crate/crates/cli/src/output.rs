//! Output rendering. Every artifact starts with the effective configuration,
//! its hash and the tool version so runs can be traced back to their inputs.

use std::io::Write;
use std::path::Path;

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Debug)]
pub struct Meta {
    pub command: String,
    /// Effective `(key, value)` pairs, sorted by key.
    pub config: Vec<(String, String)>,
    pub runtime_ms: Option<u128>,
}

pub const VERSION: &str = concat!("covertime ", env!("CARGO_PKG_VERSION"));

impl Meta {
    pub fn config_text(&self) -> String {
        self.config
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn hash(&self) -> String {
        let digest = Sha256::digest(format!("{} {}", self.command, self.config_text()));
        digest[..8].iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Comment lines (without `#`).
    pub fn header_lines(&self) -> Vec<String> {
        let mut out = vec![
            format!("version={}", VERSION.replace(' ', "-")),
            format!("command={}", self.command),
            format!("config_hash={}", self.hash()),
            format!("config: {}", self.config_text()),
        ];
        if let Some(ms) = self.runtime_ms {
            out.push(format!("runtime_ms={ms}"));
        }
        out
    }

    fn to_json(&self) -> Value {
        let config: Map<String, Value> = self
            .config
            .iter()
            .map(|(k, v)| (k.clone(), Value::String(v.clone())))
            .collect();
        let mut m = json!({
            "version": VERSION,
            "command": self.command,
            "config_hash": self.hash(),
            "config": config,
        });
        if let Some(ms) = self.runtime_ms {
            m["runtime_ms"] = json!(ms);
        }
        m
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// Renders rows as CSV (with `#` header comments) or as a JSON object
/// `{meta, rows}` where each row maps column names to values.
pub fn render_table(meta: &Meta, columns: &[&str], rows: &[Vec<Value>], format: Format) -> String {
    match format {
        Format::Csv => {
            let mut s = String::new();
            for line in meta.header_lines() {
                s.push_str(&format!("# {line}\n"));
            }
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(columns).expect("in-memory write");
            for r in rows {
                w.write_record(r.iter().map(cell)).expect("in-memory write");
            }
            s.push_str(&String::from_utf8(w.into_inner().expect("flush")).expect("utf-8 input"));
            s
        }
        Format::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|r| {
                    Value::Object(
                        columns
                            .iter()
                            .zip(r)
                            .map(|(c, v)| (c.to_string(), v.clone()))
                            .collect(),
                    )
                })
                .collect();
            let mut s =
                serde_json::to_string_pretty(&json!({"meta": meta.to_json(), "rows": rows}))
                    .expect("json values serialise");
            s.push('\n');
            s
        }
    }
}

pub fn write_output(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|source| CliError::Io {
            path: p.display().to_string(),
            source,
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}

pub fn read_file(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}
