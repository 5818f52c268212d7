//! Experiment configuration: flat key=value files plus flag overrides.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use thiserror::Error;

/// Named experiments the harness can run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExperimentName {
    GaussianNorm,
    Cocycle,
    Unitarity,
    Intertwine,
    Divergence,
    WeylKernel,
}

impl ExperimentName {
    pub const ALL: [ExperimentName; 6] = [
        ExperimentName::GaussianNorm,
        ExperimentName::Cocycle,
        ExperimentName::Unitarity,
        ExperimentName::Intertwine,
        ExperimentName::Divergence,
        ExperimentName::WeylKernel,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            ExperimentName::GaussianNorm => "gaussian-norm",
            ExperimentName::Cocycle => "cocycle",
            ExperimentName::Unitarity => "unitarity",
            ExperimentName::Intertwine => "intertwine",
            ExperimentName::Divergence => "divergence",
            ExperimentName::WeylKernel => "weyl-kernel",
        }
    }
}

impl fmt::Display for ExperimentName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ExperimentName {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, ConfigError> {
        ExperimentName::ALL
            .iter()
            .find(|e| e.as_str() == s)
            .copied()
            .ok_or_else(|| ConfigError::UnknownExperiment(s.to_string()))
    }
}

/// Output format for experiment rows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, ConfigError> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(ConfigError::InvalidValue {
                key: "format".into(),
                value: other.into(),
            }),
        }
    }
}

/// Configuration errors; the CLI maps every variant to exit code 2.
#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("unknown experiment {0:?}; expected one of gaussian-norm, cocycle, unitarity, intertwine, divergence, weyl-kernel")]
    UnknownExperiment(String),

    #[error("unknown config keys: {0}")]
    UnknownKeys(String),

    #[error("invalid value for {key}: {value:?}")]
    InvalidValue { key: String, value: String },

    #[error("malformed line {lineno} (expected key=value): {line:?}")]
    MalformedLine { lineno: usize, line: String },

    #[error("no experiment named; pass --experiment or set experiment= in the config file")]
    MissingExperiment,

    #[error("modes must lie in 1..=8, got {0}")]
    ModesOutOfRange(usize),

    #[error("cap must lie in 0..=64, got {0}")]
    CapOutOfRange(usize),

    #[error("failed to read config {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

/// Parameter keys accepted in config files beyond the structural keys.
const PARAM_KEYS: &[&str] = &[
    "r", "r1", "r2", "lambda", "spread", "depth", "samples", "block",
];

/// A fully resolved experiment configuration.
#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub experiment: ExperimentName,
    pub modes: usize,
    /// Cap grid; a single entry for scalar runs.
    pub caps: Vec<usize>,
    pub seed: u64,
    pub params: BTreeMap<String, f64>,
    pub output: Option<PathBuf>,
    pub format: OutputFormat,
}

impl ExperimentConfig {
    pub fn param(&self, key: &str, default: f64) -> f64 {
        self.params.get(key).copied().unwrap_or(default)
    }
}

/// Flag-level overrides collected by the CLI; every field beats the file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub experiment: Option<String>,
    pub modes: Option<usize>,
    pub cap: Option<usize>,
    pub seed: Option<u64>,
    pub output: Option<PathBuf>,
    pub format: Option<String>,
}

fn parse_usize(key: &str, value: &str) -> Result<usize, ConfigError> {
    value.parse().map_err(|_| ConfigError::InvalidValue {
        key: key.into(),
        value: value.into(),
    })
}

fn parse_f64(key: &str, value: &str) -> Result<f64, ConfigError> {
    value.parse().map_err(|_| ConfigError::InvalidValue {
        key: key.into(),
        value: value.into(),
    })
}

fn validate_caps(caps: &[usize]) -> Result<(), ConfigError> {
    for &cap in caps {
        if cap > 64 {
            return Err(ConfigError::CapOutOfRange(cap));
        }
    }
    Ok(())
}

/// Parses the optional config file and applies flag overrides on top.
/// Defaults: modes 1, cap 20, seed 0, csv to stdout.
pub fn parse_config(
    path: Option<&Path>,
    overrides: &Overrides,
) -> Result<ExperimentConfig, ConfigError> {
    let mut experiment: Option<ExperimentName> = None;
    let mut modes = 1usize;
    let mut caps: Vec<usize> = vec![20];
    let mut seed = 0u64;
    let mut params = BTreeMap::new();
    let mut output: Option<PathBuf> = None;
    let mut format = OutputFormat::Csv;

    if let Some(path) = path {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let mut unknown = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or(ConfigError::MalformedLine {
                lineno: lineno + 1,
                line: line.to_string(),
            })?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "experiment" => experiment = Some(value.parse()?),
                "modes" => modes = parse_usize(key, value)?,
                "cap" => {
                    caps = value
                        .split(',')
                        .map(|v| parse_usize("cap", v.trim()))
                        .collect::<Result<_, _>>()?;
                    if caps.is_empty() {
                        return Err(ConfigError::InvalidValue {
                            key: "cap".into(),
                            value: value.into(),
                        });
                    }
                }
                "seed" => {
                    seed = value.parse().map_err(|_| ConfigError::InvalidValue {
                        key: "seed".into(),
                        value: value.into(),
                    })?
                }
                "output" => output = Some(PathBuf::from(value)),
                "format" => format = value.parse()?,
                k if PARAM_KEYS.contains(&k) => {
                    params.insert(k.to_string(), parse_f64(k, value)?);
                }
                other => unknown.push(other.to_string()),
            }
        }
        if !unknown.is_empty() {
            return Err(ConfigError::UnknownKeys(unknown.join(", ")));
        }
    }

    if let Some(e) = &overrides.experiment {
        experiment = Some(e.parse()?);
    }
    if let Some(m) = overrides.modes {
        modes = m;
    }
    if let Some(cap) = overrides.cap {
        caps = vec![cap];
    }
    if let Some(s) = overrides.seed {
        seed = s;
    }
    if let Some(o) = &overrides.output {
        output = Some(o.clone());
    }
    if let Some(f) = &overrides.format {
        format = f.parse()?;
    }

    if !(1..=8).contains(&modes) {
        return Err(ConfigError::ModesOutOfRange(modes));
    }
    validate_caps(&caps)?;

    Ok(ExperimentConfig {
        experiment: experiment.ok_or(ConfigError::MissingExperiment)?,
        modes,
        caps,
        seed,
        params,
        output,
        format,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_temp(content: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(content.as_bytes()).unwrap();
        f
    }

    #[test]
    fn defaults_with_experiment_flag() {
        let cfg = parse_config(
            None,
            &Overrides {
                experiment: Some("gaussian-norm".into()),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(cfg.experiment, ExperimentName::GaussianNorm);
        assert_eq!(cfg.modes, 1);
        assert_eq!(cfg.caps, vec![20]);
        assert_eq!(cfg.seed, 0);
        assert_eq!(cfg.format, OutputFormat::Csv);
        assert!(cfg.output.is_none());
    }

    #[test]
    fn empty_file_keeps_defaults() {
        let f = write_temp("\n# comment only\n");
        let cfg = parse_config(
            Some(f.path()),
            &Overrides {
                experiment: Some("cocycle".into()),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(cfg.caps, vec![20]);
    }

    #[test]
    fn flags_override_file_values() {
        let f = write_temp("experiment=unitarity\ncap=16\nseed=3\n");
        let cfg = parse_config(
            Some(f.path()),
            &Overrides {
                cap: Some(32),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(cfg.experiment, ExperimentName::Unitarity);
        assert_eq!(cfg.caps, vec![32]);
        assert_eq!(cfg.seed, 3);
    }

    #[test]
    fn cap_grids_parse() {
        let f = write_temp("experiment=gaussian-norm\ncap=10,20,40\n");
        let cfg = parse_config(Some(f.path()), &Overrides::default()).unwrap();
        assert_eq!(cfg.caps, vec![10, 20, 40]);
    }

    #[test]
    fn unknown_keys_are_fatal_and_named() {
        let f = write_temp("experiment=cocycle\nmodez=2\n");
        let err = parse_config(Some(f.path()), &Overrides::default()).unwrap_err();
        match err {
            ConfigError::UnknownKeys(list) => assert!(list.contains("modez")),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn unknown_experiment_rejected() {
        let err = parse_config(
            None,
            &Overrides {
                experiment: Some("frobnicate".into()),
                ..Default::default()
            },
        )
        .unwrap_err();
        assert!(matches!(err, ConfigError::UnknownExperiment(_)));
    }

    #[test]
    fn range_validation() {
        let err = parse_config(
            None,
            &Overrides {
                experiment: Some("cocycle".into()),
                modes: Some(9),
                ..Default::default()
            },
        )
        .unwrap_err();
        assert!(matches!(err, ConfigError::ModesOutOfRange(9)));

        let err = parse_config(
            None,
            &Overrides {
                experiment: Some("cocycle".into()),
                cap: Some(65),
                ..Default::default()
            },
        )
        .unwrap_err();
        assert!(matches!(err, ConfigError::CapOutOfRange(65)));
    }

    #[test]
    fn missing_experiment_is_an_error() {
        let err = parse_config(None, &Overrides::default()).unwrap_err();
        assert!(matches!(err, ConfigError::MissingExperiment));
    }

    #[test]
    fn params_collected() {
        let f = write_temp("experiment=unitarity\nr=0.55\nblock=6\n");
        let cfg = parse_config(Some(f.path()), &Overrides::default()).unwrap();
        assert_eq!(cfg.param("r", 0.4), 0.55);
        assert_eq!(cfg.param("block", 8.0), 6.0);
        assert_eq!(cfg.param("absent", 1.5), 1.5);
    }
}
