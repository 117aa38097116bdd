//! Flat TOML configuration shared by every subcommand.
//!
//! Every key is optional; a flag given on the command line wins over the file.

use std::path::Path;

use serde::Deserialize;

#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub preset: Option<String>,
    pub z: Option<f64>,
    pub kappa2: Option<f64>,
    pub gamma: Option<f64>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub threshold: Option<f64>,
    pub suite: Option<String>,
    pub family: Option<String>,
    pub chart: Option<String>,
    pub state: Option<Vec<f64>>,
    pub state_chart: Option<String>,
    pub t_end: Option<f64>,
    pub rel_tol: Option<f64>,
    pub abs_tol: Option<f64>,
    pub max_step: Option<f64>,
    pub sample_stride: Option<usize>,
    pub method: Option<String>,
    pub step: Option<f64>,
    pub monitors: Option<String>,
    pub kind: Option<String>,
    pub lo: Option<Vec<f64>>,
    pub hi: Option<Vec<f64>>,
    pub n: Option<usize>,
    pub observables: Option<Vec<String>>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        toml::from_str(&text).map_err(|e| format!("invalid config {}: {e}", path.display()))
    }
}

/// First of flag, file value, default.
pub fn pick<T>(flag: Option<T>, file: Option<T>, default: T) -> T {
    flag.or(file).unwrap_or(default)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_beat_file_values() {
        assert_eq!(pick(Some(3), Some(5), 7), 3);
        assert_eq!(pick(None, Some(5), 7), 5);
        assert_eq!(pick(None, None, 7), 7);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(toml::from_str::<FileConfig>("z = 0.5\nkappa2 = 1.0").is_ok());
        assert!(toml::from_str::<FileConfig>("zeta = 0.5").is_err());
    }
}
