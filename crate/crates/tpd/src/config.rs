//! Run settings from flags, `TPD_*` environment variables and a TOML file,
//! in that order of precedence.

use std::path::Path;

use serde::Deserialize;
use tpd_core::localalg::DEFAULT_TRUNCATION;
use tpd_core::sections::{RankConfig, DEFAULT_PRIME_BITS, DEFAULT_TRIALS};

use crate::CliError;

pub const DEFAULT_SEED: u64 = 1;

/// Resolved settings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Config {
    pub trials: u32,
    pub seed: u64,
    pub prime_bits: u32,
    pub truncation: u32,
}

impl Default for Config {
    fn default() -> Self {
        Config { trials: DEFAULT_TRIALS, seed: DEFAULT_SEED, prime_bits: DEFAULT_PRIME_BITS, truncation: DEFAULT_TRUNCATION }
    }
}

impl Config {
    pub fn rank_config(&self) -> RankConfig {
        RankConfig { trials: self.trials, prime_bits: self.prime_bits }
    }
}

/// One source of settings; unset keys fall through to the next source.
#[derive(Clone, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigLayer {
    pub default_trials: Option<u32>,
    pub default_seed: Option<u64>,
    pub prime_bits: Option<u32>,
    pub truncation: Option<u32>,
}

impl ConfigLayer {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Parse(format!("config file: {}", e.message())))
    }

    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    /// Reads `TPD_DEFAULT_TRIALS`, `TPD_DEFAULT_SEED`, `TPD_PRIME_BITS` and
    /// `TPD_TRUNCATION` through `lookup`.
    pub fn from_env_with(lookup: impl Fn(&str) -> Option<String>) -> Result<Self, CliError> {
        fn read<T: std::str::FromStr>(
            lookup: &impl Fn(&str) -> Option<String>,
            key: &str,
        ) -> Result<Option<T>, CliError> {
            match lookup(key) {
                None => Ok(None),
                Some(v) => v
                    .trim()
                    .parse()
                    .map(Some)
                    .map_err(|_| CliError::Parse(format!("{key}: cannot parse `{v}`"))),
            }
        }
        Ok(ConfigLayer {
            default_trials: read(&lookup, "TPD_DEFAULT_TRIALS")?,
            default_seed: read(&lookup, "TPD_DEFAULT_SEED")?,
            prime_bits: read(&lookup, "TPD_PRIME_BITS")?,
            truncation: read(&lookup, "TPD_TRUNCATION")?,
        })
    }

    pub fn from_env() -> Result<Self, CliError> {
        Self::from_env_with(|k| std::env::var(k).ok())
    }

    /// `self` where set, otherwise `lower`.
    pub fn over(self, lower: ConfigLayer) -> ConfigLayer {
        ConfigLayer {
            default_trials: self.default_trials.or(lower.default_trials),
            default_seed: self.default_seed.or(lower.default_seed),
            prime_bits: self.prime_bits.or(lower.prime_bits),
            truncation: self.truncation.or(lower.truncation),
        }
    }

    pub fn resolve(self) -> Result<Config, CliError> {
        let d = Config::default();
        let config = Config {
            trials: self.default_trials.unwrap_or(d.trials),
            seed: self.default_seed.unwrap_or(d.seed),
            prime_bits: self.prime_bits.unwrap_or(d.prime_bits),
            truncation: self.truncation.unwrap_or(d.truncation),
        };
        if config.trials == 0 {
            return Err(CliError::Parse("trials must be at least 1".to_string()));
        }
        if !(8..=32).contains(&config.prime_bits) {
            return Err(CliError::Parse(format!("prime_bits must be in 8..=32, got {}", config.prime_bits)));
        }
        if !(1..=tpd_core::localalg::MAX_TRUNCATION).contains(&config.truncation) {
            return Err(CliError::Parse(format!("truncation must be in 1..=12, got {}", config.truncation)));
        }
        Ok(config)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let file = ConfigLayer::from_toml("default_trials = 5\ndefault_seed = 9\nprime_bits = 20\n").unwrap();
        let env = ConfigLayer::from_env_with(|k| (k == "TPD_DEFAULT_SEED").then(|| "11".to_string())).unwrap();
        let flags = ConfigLayer { default_trials: Some(2), ..Default::default() };
        let c = flags.over(env.over(file)).resolve().unwrap();
        assert_eq!(c, Config { trials: 2, seed: 11, prime_bits: 20, truncation: DEFAULT_TRUNCATION });
    }

    #[test]
    fn rejects_bad_values() {
        assert!(ConfigLayer::from_toml("colour = 1").is_err());
        assert!(ConfigLayer::from_env_with(|_| Some("x".to_string())).is_err());
        assert!(ConfigLayer { default_trials: Some(0), ..Default::default() }.resolve().is_err());
        assert!(ConfigLayer { prime_bits: Some(40), ..Default::default() }.resolve().is_err());
    }
}
