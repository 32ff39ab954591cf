//! Plain `key = value` config files. Flags given on the command line take
//! precedence over values read here.

use std::collections::BTreeMap;
use std::path::Path;

use crate::CliError;

const KEYS: [&str; 11] = [
    "energy", "depth", "samples", "seed", "format", "output", "max-sum", "dt", "tol", "only", "ecc",
];

#[derive(Debug, Default, Clone)]
pub struct ConfigFile {
    values: BTreeMap<String, String>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut values = BTreeMap::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Usage(format!("config line {}: expected key = value", n + 1))
            })?;
            let key = key.trim().replace('_', "-");
            if !KEYS.contains(&key.as_str()) {
                return Err(CliError::Usage(format!(
                    "config line {}: unknown key {key:?}",
                    n + 1
                )));
            }
            values.insert(key, value.trim().to_string());
        }
        Ok(Self { values })
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    pub fn get<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>, CliError> {
        self.raw(key)
            .map(|v| {
                v.parse()
                    .map_err(|_| CliError::Usage(format!("config key {key}: invalid value {v:?}")))
            })
            .transpose()
    }
}

/// `flag`, else the config value, else `default`.
pub fn pick<T: std::str::FromStr>(
    flag: Option<T>,
    cfg: &ConfigFile,
    key: &str,
    default: T,
) -> Result<T, CliError> {
    Ok(match flag {
        Some(v) => v,
        None => cfg.get(key)?.unwrap_or(default),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_rejects() {
        let c = ConfigFile::parse("# comment\nenergy = -2\n\nmax_sum=5 # trailing\n").unwrap();
        assert_eq!(c.get::<f64>("energy").unwrap(), Some(-2.0));
        assert_eq!(c.get::<u32>("max-sum").unwrap(), Some(5));
        assert!(ConfigFile::parse("colour = red").is_err());
        assert!(ConfigFile::parse("energy").is_err());
        assert!(c.get::<u32>("energy").is_err());
    }

    #[test]
    fn flags_win() {
        let c = ConfigFile::parse("seed = 7").unwrap();
        assert_eq!(pick(Some(1u64), &c, "seed", 42).unwrap(), 1);
        assert_eq!(pick(None, &c, "seed", 42u64).unwrap(), 7);
        assert_eq!(
            pick(None, &ConfigFile::default(), "seed", 42u64).unwrap(),
            42
        );
    }
}
