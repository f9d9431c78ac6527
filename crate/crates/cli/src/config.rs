//! Optional TOML config file support. Flags always win over config values,
//! config values win over built-in defaults; the resolved value is what the
//! output header echoes.

use crate::CliError;
use std::path::Path;

pub struct Settings {
    table: toml::Table,
}

impl Settings {
    pub fn empty() -> Self {
        Settings {
            table: toml::Table::new(),
        }
    }

    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let Some(path) = path else {
            return Ok(Self::empty());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("cannot read config {}: {e}", path.display())))?;
        let table: toml::Table = text
            .parse()
            .map_err(|e| CliError::usage(format!("config {}: {e}", path.display())))?;
        Ok(Settings { table })
    }

    fn get(&self, key: &str) -> Option<&toml::Value> {
        self.table.get(key)
    }

    pub fn u64_value(&self, key: &str) -> Result<Option<u64>, CliError> {
        match self.get(key) {
            None => Ok(None),
            Some(toml::Value::Integer(i)) if *i >= 0 => Ok(Some(*i as u64)),
            Some(v) => Err(CliError::usage(format!(
                "config key {key} must be a non-negative integer, got {v}"
            ))),
        }
    }

    pub fn usize_value(&self, key: &str) -> Result<Option<usize>, CliError> {
        Ok(self.u64_value(key)?.map(|v| v as usize))
    }

    pub fn f64_value(&self, key: &str) -> Result<Option<f64>, CliError> {
        match self.get(key) {
            None => Ok(None),
            Some(toml::Value::Float(f)) => Ok(Some(*f)),
            Some(toml::Value::Integer(i)) => Ok(Some(*i as f64)),
            Some(v) => Err(CliError::usage(format!(
                "config key {key} must be a number, got {v}"
            ))),
        }
    }

    pub fn string_value(&self, key: &str) -> Result<Option<String>, CliError> {
        match self.get(key) {
            None => Ok(None),
            Some(toml::Value::String(s)) => Ok(Some(s.clone())),
            Some(v) => Err(CliError::usage(format!(
                "config key {key} must be a string, got {v}"
            ))),
        }
    }
}

/// Parse a comma-separated list (`3,5,7`) with a typed element parser.
pub fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>, CliError> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<T>()
                .map_err(|_| CliError::usage(format!("invalid {what} entry {s:?}")))
        })
        .collect()
}
