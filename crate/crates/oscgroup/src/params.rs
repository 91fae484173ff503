//! `name = value` parameter files: one assignment per line, `#` starts a
//! comment, values are integers, fractions `a/b` or finite decimals.

use std::collections::BTreeMap;
use std::path::Path;

use oscgroup_core::coeff::{parse_rational, rat_to_f64, Rat};

use crate::error::ConfigError;

/// Greek spellings accepted for the parameters that have them.
const ALIASES: [(&str, &str); 5] = [("ρ", "rho"), ("τ", "tau"), ("σ", "sigma"), ("θ", "theta"), ("ω", "omega")];

pub fn canonical_key(k: &str) -> &str {
    ALIASES.iter().find(|(g, _)| *g == k).map(|(_, n)| *n).unwrap_or(k)
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ParamFile {
    pub values: BTreeMap<String, Rat>,
}

impl ParamFile {
    /// Parse `text`, accepting only the keys in `allowed`.
    pub fn parse(text: &str, allowed: &[&str]) -> Result<ParamFile, ConfigError> {
        let mut values = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let (k, v) = body.split_once('=').ok_or(ConfigError::Syntax { line })?;
            let key = canonical_key(k.trim());
            if key.is_empty() {
                return Err(ConfigError::Syntax { line });
            }
            if !allowed.contains(&key) {
                return Err(ConfigError::UnknownKey { line, key: key.to_string() });
            }
            let value = parse_rational(v).ok_or_else(|| ConfigError::BadValue {
                line,
                value: v.trim().to_string(),
            })?;
            if values.insert(key.to_string(), value).is_some() {
                return Err(ConfigError::DuplicateKey { line, key: key.to_string() });
            }
        }
        Ok(ParamFile { values })
    }

    pub fn load(path: &Path, allowed: &[&str]) -> Result<ParamFile, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        ParamFile::parse(&text, allowed)
    }

    pub fn get(&self, key: &str) -> Option<f64> {
        self.values.get(key).map(rat_to_f64)
    }

    pub fn require(&self, key: &str) -> Result<f64, ConfigError> {
        self.get(key).ok_or_else(|| ConfigError::MissingKey(key.to_string()))
    }

    pub fn floats(&self) -> BTreeMap<String, f64> {
        self.values.iter().map(|(k, v)| (k.clone(), rat_to_f64(v))).collect()
    }
}
