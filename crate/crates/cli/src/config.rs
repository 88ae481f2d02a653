//! Budget resolution: command-line flags win over the config file, which wins
//! over `HEROES_*` environment variables, which win over built-in defaults.

use std::path::{Path, PathBuf};
use std::time::Duration;

use chordal_heroes::constructions::{Limits, VerifyBudget};
use serde::{Deserialize, Serialize};

pub const ENV_NODE_CAP: &str = "HEROES_NODE_CAP";
pub const ENV_SET_CAP: &str = "HEROES_SET_CAP";
pub const ENV_VERTEX_CAP: &str = "HEROES_VERTEX_CAP";
pub const ENV_TIME_CAP: &str = "HEROES_TIME_CAP";

pub const DEFAULT_NODE_CAP: u64 = 2_000_000;
pub const DEFAULT_SET_CAP: usize = 1_000_000;
pub const DEFAULT_VERTEX_CAP: usize = 2_000_000;
pub const DEFAULT_EXACT_LIMIT: usize = 400;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// Keys accepted in a `--config` TOML file. Every key is optional.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub node_cap: Option<u64>,
    pub set_cap: Option<usize>,
    pub vertex_cap: Option<usize>,
    /// Seconds.
    pub time_cap: Option<f64>,
    pub exact_limit: Option<usize>,
    pub seed: Option<u64>,
    pub format: Option<Format>,
    pub results_dir: Option<PathBuf>,
    pub verbose: Option<u8>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        toml::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
    }
}

/// Values given on the command line; `None` means not given.
#[derive(Debug, Clone, Default)]
pub struct FlagConfig {
    pub node_cap: Option<u64>,
    pub set_cap: Option<usize>,
    pub vertex_cap: Option<usize>,
    pub time_cap: Option<f64>,
    pub exact_limit: Option<usize>,
    pub seed: Option<u64>,
    pub format: Option<Format>,
    pub results_dir: Option<PathBuf>,
    pub verbose: u8,
}

/// Fully resolved settings for one run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Settings {
    pub node_cap: u64,
    pub set_cap: usize,
    pub vertex_cap: usize,
    pub time_cap: Option<f64>,
    pub exact_limit: usize,
    pub seed: u64,
    pub format: Format,
    pub results_dir: PathBuf,
    pub verbose: u8,
}

fn env_value<T: std::str::FromStr>(env: &dyn Fn(&str) -> Option<String>, key: &str) -> Result<Option<T>, String> {
    match env(key) {
        None => Ok(None),
        Some(v) => v.trim().parse().map(Some).map_err(|_| format!("{key}={v:?} is not a valid value")),
    }
}

fn positive<T: PartialOrd + Default + std::fmt::Display>(name: &str, v: T) -> Result<T, String> {
    if v > T::default() {
        Ok(v)
    } else {
        Err(format!("{name} must be positive, got {v}"))
    }
}

impl Settings {
    /// `env` abstracts the process environment so tests can supply their own.
    pub fn resolve(
        flags: &FlagConfig,
        file: &FileConfig,
        env: &dyn Fn(&str) -> Option<String>,
    ) -> Result<Self, String> {
        let node_cap = flags.node_cap.or(file.node_cap).or(env_value(env, ENV_NODE_CAP)?).unwrap_or(DEFAULT_NODE_CAP);
        let set_cap = flags.set_cap.or(file.set_cap).or(env_value(env, ENV_SET_CAP)?).unwrap_or(DEFAULT_SET_CAP);
        let vertex_cap =
            flags.vertex_cap.or(file.vertex_cap).or(env_value(env, ENV_VERTEX_CAP)?).unwrap_or(DEFAULT_VERTEX_CAP);
        let time_cap = flags.time_cap.or(file.time_cap).or(env_value(env, ENV_TIME_CAP)?);
        let exact_limit = flags.exact_limit.or(file.exact_limit).unwrap_or(DEFAULT_EXACT_LIMIT);
        if let Some(t) = time_cap {
            if !(t.is_finite() && t > 0.0) {
                return Err(format!("time cap must be positive, got {t}"));
            }
        }
        Ok(Settings {
            node_cap: positive("node cap", node_cap)?,
            set_cap: positive("set cap", set_cap)?,
            vertex_cap: positive("vertex cap", vertex_cap)?,
            time_cap,
            exact_limit,
            seed: flags.seed.or(file.seed).unwrap_or(0),
            format: flags.format.or(file.format).unwrap_or_default(),
            results_dir: flags.results_dir.clone().or(file.results_dir.clone()).unwrap_or_else(|| "results".into()),
            verbose: flags.verbose.max(file.verbose.unwrap_or(0)),
        })
    }

    pub fn limits(&self) -> Limits {
        Limits { vertex_cap: self.vertex_cap, set_cap: self.set_cap }
    }

    pub fn verify_budget(&self) -> VerifyBudget {
        VerifyBudget { node_cap: self.node_cap, exact_vertex_limit: self.exact_limit }
    }

    pub fn time_cap(&self) -> Option<Duration> {
        self.time_cap.map(Duration::from_secs_f64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn env_of(pairs: &'static [(&'static str, &'static str)]) -> impl Fn(&str) -> Option<String> {
        move |k| pairs.iter().find(|(key, _)| *key == k).map(|(_, v)| v.to_string())
    }

    #[test]
    fn precedence_flags_file_env_default() {
        let env = env_of(&[(ENV_NODE_CAP, "30"), (ENV_SET_CAP, "40"), (ENV_VERTEX_CAP, "50")]);
        let file = FileConfig { node_cap: Some(20), set_cap: Some(21), ..Default::default() };
        let flags = FlagConfig { node_cap: Some(10), ..Default::default() };
        let s = Settings::resolve(&flags, &file, &env).unwrap();
        assert_eq!((s.node_cap, s.set_cap, s.vertex_cap), (10, 21, 50));
        let s = Settings::resolve(&FlagConfig::default(), &FileConfig::default(), &|_| None).unwrap();
        assert_eq!(s.node_cap, DEFAULT_NODE_CAP);
        assert_eq!(s.time_cap, None);
    }

    #[test]
    fn rejects_bad_budgets() {
        let flags = FlagConfig { node_cap: Some(0), ..Default::default() };
        assert!(Settings::resolve(&flags, &FileConfig::default(), &|_| None).is_err());
        let env = env_of(&[(ENV_TIME_CAP, "soon")]);
        assert!(Settings::resolve(&FlagConfig::default(), &FileConfig::default(), &env).is_err());
        let flags = FlagConfig { time_cap: Some(-1.0), ..Default::default() };
        assert!(Settings::resolve(&flags, &FileConfig::default(), &|_| None).is_err());
    }

    #[test]
    fn file_config_parses() {
        let c: FileConfig = toml::from_str("node_cap = 5\nformat = \"json\"\ntime_cap = 1.5\n").unwrap();
        assert_eq!(c.node_cap, Some(5));
        assert_eq!(c.format, Some(Format::Json));
        assert!(toml::from_str::<FileConfig>("bogus = 1").is_err());
    }
}
