//! Defaults read from a TOML file. Every key is optional and any flag given
//! on the command line wins.
//!
//! ```toml
//! rho = "3/2"
//! radius = "5"
//! depth_budget = 64
//! depth = 10
//! format = "machine"
//! ```

use std::path::Path;

use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Default, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub rho: Option<String>,
    pub radius: Option<String>,
    pub depth_budget: Option<u32>,
    /// Search depth for the `oracle` subcommands.
    pub depth: Option<u32>,
    pub format: Option<String>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
    }

    pub fn parse(text: &str) -> Result<Self, toml::de::Error> {
        toml::from_str(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_known_keys() {
        let c = FileConfig::parse("rho = \"3/2\"\ndepth_budget = 8\n").unwrap();
        assert_eq!(c.rho.as_deref(), Some("3/2"));
        assert_eq!(c.depth_budget, Some(8));
        assert_eq!(c.radius, None);
    }

    #[test]
    fn rejects_unknown_keys() {
        assert!(FileConfig::parse("radious = \"3\"").is_err());
    }
}
