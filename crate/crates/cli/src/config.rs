//! Plain `key=value` configuration files.
//!
//! Blank lines and lines starting with `#` are ignored. Keys use the long
//! flag names with `-` or `_` (`d-start` and `d_start` are the same key).
//! Values from the file only fill in flags that were not given.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigFile {
    values: BTreeMap<String, String>,
}

fn normalize(key: &str) -> String {
    key.trim().replace('_', "-")
}

impl ConfigFile {
    pub fn parse(text: &str) -> CliResult<Self> {
        let mut values = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("config line {}: expected key=value", i + 1)))?;
            let key = normalize(k);
            if key.is_empty() {
                return Err(CliError::Usage(format!("config line {}: empty key", i + 1)));
            }
            values.insert(key, v.trim().to_string());
        }
        Ok(ConfigFile { values })
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.values.get(&normalize(key)).map(String::as_str)
    }

    pub fn get<T: FromStr>(&self, key: &str) -> CliResult<Option<T>>
    where
        T::Err: std::fmt::Display,
    {
        self.raw(key)
            .map(|v| {
                v.parse::<T>()
                    .map_err(|e| CliError::Usage(format!("config key {key}: {e}")))
            })
            .transpose()
    }

    /// The flag value if given, otherwise the config value.
    pub fn or<T: FromStr>(&self, flag: Option<T>, key: &str) -> CliResult<Option<T>>
    where
        T::Err: std::fmt::Display,
    {
        match flag {
            Some(v) => Ok(Some(v)),
            None => self.get(key),
        }
    }

    /// Like [`ConfigFile::or`] but the value must come from somewhere.
    pub fn require<T: FromStr>(&self, flag: Option<T>, key: &str) -> CliResult<T>
    where
        T::Err: std::fmt::Display,
    {
        self.or(flag, key)?
            .ok_or_else(|| CliError::Usage(format!("missing required value --{key}")))
    }
}
