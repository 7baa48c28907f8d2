use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Deserialize;

use crate::Failure;

/// Values any flag can take from a config file. Flags win.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct Config {
    pub format: Option<String>,
    pub budget: Option<usize>,
    pub solver: Option<String>,
    pub method: Option<String>,
    pub tether: Option<PathBuf>,
    pub d: Option<u32>,
    pub n: Option<u64>,
    pub linear_h: Option<String>,
    pub histogram: Option<String>,
    pub n_min: Option<usize>,
    pub n_max: Option<usize>,
    pub checks: Option<Vec<String>>,
    pub checkpoint_interval: Option<u64>,
    pub resume: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub jobs: Option<usize>,
    pub sources: Option<String>,
}

impl Config {
    pub fn load(path: Option<&Path>) -> Result<Config, Failure> {
        match path {
            Some(path) => read_structured(path),
            None => Ok(Config::default()),
        }
    }
}

/// Reads a TOML file (by extension) or JSON otherwise.
pub fn read_structured<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::io(path, e))?;
    let is_toml = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("toml"));
    if is_toml {
        toml::from_str(&text).map_err(|e| Failure::parse(format!("{}: {e}", path.display())))
    } else {
        serde_json::from_str(&text).map_err(|e| Failure::parse(format!("{}: {e}", path.display())))
    }
}
