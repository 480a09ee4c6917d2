//! Settings from flags and an optional TOML file. Flags win.

use std::path::Path;

use serde::Deserialize;

use crate::args::GlobalArgs;
use crate::CliError;

pub const CONFIG_ENV: &str = "RBQSYM_CONFIG";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputMode {
    Text,
    Json,
}

/// Contents of the config file; every field optional.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub tol: Option<f64>,
    pub max_cutoff: Option<u64>,
    pub budget: Option<usize>,
    pub vars: Option<u32>,
    pub deg: Option<u32>,
    pub zero_budget: Option<u32>,
    pub output: Option<OutputMode>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::Usage(format!("bad config {}: {e}", path.display())))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub tol: f64,
    pub max_cutoff: u64,
    pub budget: usize,
    pub vars: u32,
    pub deg: u32,
    pub zero_budget: u32,
    pub output: OutputMode,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            tol: 1e-8,
            max_cutoff: 1 << 30,
            budget: 10_000_000,
            vars: 6,
            deg: 6,
            zero_budget: 2,
            output: OutputMode::Text,
        }
    }
}

impl Config {
    pub fn resolve(flags: &GlobalArgs) -> Result<Self, CliError> {
        let file = match &flags.config {
            Some(p) => FileConfig::load(p)?,
            None => FileConfig::default(),
        };
        let d = Config::default();
        let cfg = Config {
            tol: flags.tol.or(file.tol).unwrap_or(d.tol),
            max_cutoff: flags.max_cutoff.or(file.max_cutoff).unwrap_or(d.max_cutoff),
            budget: flags.budget.or(file.budget).unwrap_or(d.budget),
            vars: flags.vars.or(file.vars).unwrap_or(d.vars),
            deg: flags.deg.or(file.deg).unwrap_or(d.deg),
            zero_budget: flags.zero_budget.or(file.zero_budget).unwrap_or(d.zero_budget),
            output: if flags.json { OutputMode::Json } else { file.output.unwrap_or(d.output) },
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), CliError> {
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return Err(CliError::Usage(format!("tolerance must be positive, got {}", self.tol)));
        }
        if self.max_cutoff == 0 || self.budget == 0 || self.vars == 0 || self.deg == 0 {
            return Err(CliError::Usage("max_cutoff, budget, vars and deg must be positive".into()));
        }
        Ok(())
    }

    pub fn json(&self) -> bool {
        self.output == OutputMode::Json
    }
}
