//! Suite configuration read from TOML.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sov_core::{parse_scalar, Algebra, Bindings, Limits, Param};

use crate::oracle::OracleConfig;

/// Environment variable overriding `degree-cap`.
pub const DEGREE_CAP_ENV: &str = "SOV_DEGREE_CAP";

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("malformed config: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("chain length must be at least 1")]
    EmptyChain,
    #[error("unknown parameter `{0}`")]
    UnknownParam(String),
    #[error("`{key}`: {msg}")]
    BadValue { key: String, msg: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlgebraName {
    Sl2,
    Sl3,
}

impl AlgebraName {
    pub fn algebra(self) -> Algebra {
        match self {
            AlgebraName::Sl2 => Algebra::Sl2,
            AlgebraName::Sl3 => Algebra::Sl3,
        }
    }
}

impl std::str::FromStr for AlgebraName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "sl2" => Ok(AlgebraName::Sl2),
            "sl3" => Ok(AlgebraName::Sl3),
            other => Err(format!("unknown algebra `{other}`, expected sl2 or sl3")),
        }
    }
}

/// Registered suites, in canonical order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Rtt,
    Minors,
    QdetCentral,
    Gauss,
    Prop1Sl2,
    Prop2Sl3B,
    Intertwiners,
    ROps,
    WChain,
    EigenSl2,
    EigenSl3N1,
    EigenSl3,
    Separation,
    Momentum,
}

impl Suite {
    pub const ALL: [Suite; 14] = [
        Suite::Rtt,
        Suite::Minors,
        Suite::QdetCentral,
        Suite::Gauss,
        Suite::Prop1Sl2,
        Suite::Prop2Sl3B,
        Suite::Intertwiners,
        Suite::ROps,
        Suite::WChain,
        Suite::EigenSl2,
        Suite::EigenSl3N1,
        Suite::EigenSl3,
        Suite::Separation,
        Suite::Momentum,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Rtt => "rtt",
            Suite::Minors => "minors",
            Suite::QdetCentral => "qdet-central",
            Suite::Gauss => "gauss",
            Suite::Prop1Sl2 => "prop1-sl2",
            Suite::Prop2Sl3B => "prop2-sl3-B",
            Suite::Intertwiners => "intertwiners",
            Suite::ROps => "r-ops",
            Suite::WChain => "w-chain",
            Suite::EigenSl2 => "eigen-sl2",
            Suite::EigenSl3N1 => "eigen-sl3-n1",
            Suite::EigenSl3 => "eigen-sl3",
            Suite::Separation => "separation",
            Suite::Momentum => "momentum",
        }
    }

    pub fn parse(s: &str) -> Result<Suite, ConfigError> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| ConfigError::UnknownSuite(s.to_string()))
    }
}

fn default_cap() -> u32 {
    Limits::default().max_order
}

fn default_n() -> usize {
    1
}

/// The on-disk configuration.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct SuiteConfig {
    pub algebra: AlgebraName,
    #[serde(default = "default_n")]
    pub n: usize,
    #[serde(default)]
    pub suites: Vec<String>,
    /// Forced intertwiner exponents, keyed by the index of the lattice
    /// condition in chain order.
    #[serde(default)]
    pub lattice: BTreeMap<String, i64>,
    /// Exact values for non-spectral parameters.
    #[serde(default)]
    pub specialization: BTreeMap<String, String>,
    #[serde(default)]
    pub oracle: OracleConfig,
    #[serde(default = "default_cap")]
    pub degree_cap: u32,
    #[serde(default)]
    pub report_path: Option<PathBuf>,
}

impl SuiteConfig {
    pub fn new(algebra: AlgebraName, n: usize) -> Self {
        SuiteConfig {
            algebra,
            n,
            suites: Vec::new(),
            lattice: BTreeMap::new(),
            specialization: BTreeMap::new(),
            oracle: OracleConfig::default(),
            degree_cap: default_cap(),
            report_path: None,
        }
    }

    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        let cfg: SuiteConfig = toml::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io { path: path.to_path_buf(), source })?;
        Self::from_toml(&text)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.n == 0 {
            return Err(ConfigError::EmptyChain);
        }
        self.suite_list()?;
        self.overrides()?;
        self.bindings()?;
        Ok(())
    }

    pub fn suite_list(&self) -> Result<Vec<Suite>, ConfigError> {
        self.suites.iter().map(|s| Suite::parse(s)).collect()
    }

    pub fn overrides(&self) -> Result<BTreeMap<usize, i64>, ConfigError> {
        self.lattice
            .iter()
            .map(|(k, v)| {
                let idx = k.parse::<usize>().map_err(|_| ConfigError::BadValue {
                    key: format!("lattice.{k}"),
                    msg: "keys are condition indices".into(),
                })?;
                Ok((idx, *v))
            })
            .collect()
    }

    /// The specialization as exact bindings.
    pub fn bindings(&self) -> Result<Bindings, ConfigError> {
        let mut out = Bindings::new();
        for (k, v) in &self.specialization {
            let p = Param::parse(k).ok_or_else(|| ConfigError::UnknownParam(k.clone()))?;
            if p == Param::u() || p == Param::v() {
                return Err(ConfigError::BadValue { key: k.clone(), msg: "spectral parameters stay symbolic".into() });
            }
            let s = parse_scalar(v).map_err(|e| ConfigError::BadValue { key: k.clone(), msg: e.to_string() })?;
            if !s.is_constant() {
                return Err(ConfigError::BadValue { key: k.clone(), msg: format!("{v} is not an exact constant") });
            }
            out.insert(p, s);
        }
        Ok(out)
    }

    /// Applies the environment override of the degree cap.
    pub fn apply_env(&mut self) -> Result<(), ConfigError> {
        if let Ok(v) = std::env::var(DEGREE_CAP_ENV) {
            self.degree_cap = v.trim().parse().map_err(|_| ConfigError::BadValue {
                key: DEGREE_CAP_ENV.into(),
                msg: format!("`{v}` is not a nonnegative integer"),
            })?;
        }
        Ok(())
    }

    pub fn limits(&self) -> Limits {
        Limits { max_order: self.degree_cap }
    }
}
