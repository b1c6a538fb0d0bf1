use std::path::Path;

use clap::ValueEnum;
use serde::Deserialize;

use crate::CliError;
use zelcoh::ledger::Kappa;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Ascii,
    Svg,
}

/// Values read from `--config`; every field can be overridden by a flag.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub d: Option<u32>,
    pub g: Option<u32>,
    pub e_pi: Option<u32>,
    /// `"num/den"`
    pub kappa: Option<String>,
    pub levels: Option<Vec<u32>>,
    pub format: Option<Format>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Config, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::schema(format!("{}: {e}", path.display())))?;
        let de = toml::Deserializer::new(&text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            CliError::schema(format!(
                "{}: invalid config at `{}`: {}",
                path.display(),
                e.path(),
                e.inner().message()
            ))
        })
    }
}

pub fn parse_kappa(s: &str) -> Result<Kappa, CliError> {
    let (num, den) = s.split_once('/').unwrap_or((s, "1"));
    let parse = |x: &str| {
        x.trim()
            .parse::<u64>()
            .map_err(|_| CliError::usage(format!("kappa must look like num/den, got {s:?}")))
    };
    Kappa::new(parse(num)?, parse(den)?).map_err(|e| CliError::usage(e.to_string()))
}
