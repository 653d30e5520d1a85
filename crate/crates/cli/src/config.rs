//! Flat TOML config. Every key mirrors a command-line flag (with `_` for
//! `-`); flags win over file values.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Deserialize;

use crate::Failure;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub rule: Option<String>,
    pub property: Option<String>,
    pub m: Option<usize>,
    pub n: Option<usize>,
    pub axis: Option<String>,
    pub graph: Option<String>,
    pub seed: Option<u64>,
    pub scheduler: Option<String>,
    pub order: Option<String>,
    pub max_steps: Option<usize>,
    pub target: Option<String>,
    pub oracle: Option<bool>,
    pub oracle_max_states: Option<usize>,
    pub paper_witnesses: Option<bool>,
    pub net: Option<PathBuf>,
    pub profile: Option<PathBuf>,
    pub current: Option<String>,
    pub max_winners: Option<usize>,
    pub sweep: Option<Vec<usize>>,
    pub seeds: Option<u64>,
    pub kind: Option<String>,
    pub out: Option<PathBuf>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, Failure> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("config {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| Failure::Usage(format!("config {}: {e}", path.display())))
    }
}

/// Parses a selector, naming the field on failure.
pub fn parse<T>(field: &str, s: &str) -> Result<T, Failure>
where
    T: FromStr,
    T::Err: std::fmt::Display,
{
    s.parse().map_err(|e| Failure::Usage(format!("invalid {field} {s:?}: {e}")))
}

pub fn require<T>(field: &str, v: Option<T>) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("missing {field} (flag or config key)")))
}

pub fn positive(field: &str, v: usize) -> Result<usize, Failure> {
    if v == 0 {
        Err(Failure::Usage(format!("{field} must be positive")))
    } else {
        Ok(v)
    }
}
