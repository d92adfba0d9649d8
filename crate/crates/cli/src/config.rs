//! Flat `key = value` config files with optional `[section]` headers.
//!
//! Keys before the first section apply to every subcommand; keys inside
//! `[walk]` apply only to `walk`, and so on. Keys are flag names without the
//! leading dashes; `_` and `-` are interchangeable.

use std::collections::BTreeMap;

use crate::error::{CliError, CliResult};

#[derive(Debug, Default, PartialEq)]
pub struct ConfigFile {
    pub global: BTreeMap<String, String>,
    pub sections: BTreeMap<String, BTreeMap<String, String>>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> CliResult<Self> {
        let mut out = ConfigFile::default();
        let mut section: Option<String> = None;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
                section = Some(name.trim().to_string());
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return Err(CliError::Config {
                    line: i + 1,
                    msg: format!("expected `key = value`, got `{line}`"),
                });
            };
            let key = k.trim().replace('_', "-");
            if key.is_empty() {
                return Err(CliError::Config {
                    line: i + 1,
                    msg: "empty key".into(),
                });
            }
            let map = match &section {
                Some(s) => out.sections.entry(s.clone()).or_default(),
                None => &mut out.global,
            };
            map.insert(key, v.trim().to_string());
        }
        Ok(out)
    }

    /// Entries for `command`, section values overriding global ones.
    pub fn entries_for(&self, command: &str) -> BTreeMap<String, String> {
        let mut out = self.global.clone();
        if let Some(s) = self.sections.get(command) {
            out.extend(s.iter().map(|(k, v)| (k.clone(), v.clone())));
        }
        out
    }
}
