//! Flat `key = value` sweep configuration.
//!
//! ```text
//! # equal drives, strongly squeezed probe
//! omega1 = 1
//! omega2 = 1
//! xi2 = -3
//! omega_range = 0.05:1:20
//! z_range = 0:200:100
//! mode = compare
//! ```
//!
//! Lists are comma separated; `*_range = start:stop:count` expands to `count`
//! evenly spaced points including both ends.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use eit_noise::{build_drive, build_drive_from_rabi, DriveState, MediumParams};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("invalid override: {0}")]
    Override(String),
    #[error("duplicate key `{0}`")]
    Duplicate(String),
    #[error("unknown key `{0}`")]
    UnknownKey(String),
    #[error("invalid value for `{key}`: {msg}")]
    Value { key: String, msg: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("cannot read config: {0}")]
    Io(String),
}

/// Raw key/value pairs in file order-independent form.
pub type RawConfig = BTreeMap<String, String>;

const KEYS: &[&str] = &[
    "gamma1",
    "gamma2",
    "g1",
    "g2",
    "n_atoms",
    "gamma12",
    "alpha1",
    "alpha2",
    "omega1",
    "omega2",
    "xi2",
    "theta",
    "omega",
    "omega_range",
    "z",
    "z_range",
    "mode",
    "out",
    "tolerance",
    "eigen_tolerance",
    "test_diffusion_offset",
];

const MAX_GRID_POINTS: usize = 1_000_000;

fn valid_key(key: &str) -> bool {
    !key.is_empty() && key.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parse config text. Blank lines and `#` comments are ignored.
pub fn parse_config(text: &str) -> Result<RawConfig, ConfigError> {
    let mut map = RawConfig::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = split_pair(line).map_err(|msg| ConfigError::Syntax { line: k + 1, msg })?;
        if map.insert(key.clone(), value).is_some() {
            return Err(ConfigError::Duplicate(key));
        }
    }
    Ok(map)
}

/// Parse one `--set key=value` override.
pub fn parse_override(arg: &str) -> Result<(String, String), ConfigError> {
    split_pair(arg.trim()).map_err(ConfigError::Override)
}

fn split_pair(line: &str) -> Result<(String, String), String> {
    let (key, value) = line
        .split_once('=')
        .ok_or_else(|| format!("expected `key = value`, got `{line}`"))?;
    let (key, value) = (key.trim(), value.trim());
    if !valid_key(key) {
        return Err(format!("invalid key `{key}`"));
    }
    if value.is_empty() {
        return Err(format!("empty value for `{key}`"));
    }
    Ok((key.to_string(), value.to_string()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Analytic,
    Numeric,
    Compare,
    Decoherence,
}

impl FromStr for Mode {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "analytic" => Ok(Mode::Analytic),
            "numeric" => Ok(Mode::Numeric),
            "compare" => Ok(Mode::Compare),
            "decoherence" => Ok(Mode::Decoherence),
            other => Err(ConfigError::Value {
                key: "mode".into(),
                msg: format!("expected analytic, numeric, compare or decoherence, got `{other}`"),
            }),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Analytic => "analytic",
            Mode::Numeric => "numeric",
            Mode::Compare => "compare",
            Mode::Decoherence => "decoherence",
        })
    }
}

/// Carrier strength as field amplitudes or Rabi frequencies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Carrier {
    Amplitude { alpha1: f64, alpha2: f64 },
    Rabi { omega1: f64, omega2: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub gamma1: f64,
    pub gamma2: f64,
    pub g1: f64,
    pub g2: f64,
    pub n_atoms: f64,
    pub gamma12: f64,
    pub carrier: Carrier,
    pub xi2: f64,
    pub theta: Vec<f64>,
    /// Sideband frequencies in units of gamma.
    pub omega: Vec<f64>,
    /// Positions in units of gamma / C.
    pub z: Vec<f64>,
    pub mode: Mode,
    pub out: Option<PathBuf>,
    /// Largest accepted relative spectrum deviation in a comparison.
    pub tolerance: f64,
    /// Largest accepted relative eigenvalue deviation in a comparison.
    pub eigen_tolerance: f64,
    /// Added to the diffusion diagonal; only for negative-control tests.
    pub test_diffusion_offset: f64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            gamma1: 0.5,
            gamma2: 0.5,
            g1: 1.0 / 60.0,
            g2: 1.0 / 60.0,
            n_atoms: 3600.0,
            gamma12: 0.0,
            carrier: Carrier::Rabi {
                omega1: 1.0,
                omega2: 1.0,
            },
            xi2: -3.0,
            theta: vec![0.0],
            omega: linspace(0.05, 1.0, 20),
            z: linspace(0.0, 200.0, 100),
            mode: Mode::Compare,
            out: None,
            tolerance: 1e-3,
            eigen_tolerance: 1e-6,
            test_diffusion_offset: 0.0,
        }
    }
}

/// `count` evenly spaced points on `[start, stop]`.
pub fn linspace(start: f64, stop: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![start],
        n => (0..n)
            .map(|k| start + (stop - start) * k as f64 / (n - 1) as f64)
            .collect(),
    }
}

fn value_error(key: &str, msg: impl Into<String>) -> ConfigError {
    ConfigError::Value {
        key: key.to_string(),
        msg: msg.into(),
    }
}

fn looks_complex(s: &str) -> bool {
    let t = s.trim();
    (t.ends_with('i') || t.ends_with('j')) && t.chars().any(|c| c.is_ascii_digit())
}

fn parse_real(key: &str, s: &str) -> Result<f64, ConfigError> {
    let t = s.trim();
    match t.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        Ok(v) => Err(value_error(key, format!("must be finite, got {v}"))),
        Err(_) if looks_complex(t) => Err(ConfigError::Unsupported(format!(
            "complex value `{t}` for `{key}`; only real squeezing parameters and amplitudes are supported"
        ))),
        Err(_) => Err(value_error(key, format!("expected a number, got `{t}`"))),
    }
}

fn parse_list(key: &str, s: &str) -> Result<Vec<f64>, ConfigError> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| parse_real(key, t))
        .collect()
}

fn parse_range(key: &str, s: &str) -> Result<Vec<f64>, ConfigError> {
    let parts: Vec<&str> = s.split(':').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(value_error(key, "expected start:stop:count"));
    }
    let start = parse_real(key, parts[0])?;
    let stop = parse_real(key, parts[1])?;
    let count: usize = parts[2]
        .parse()
        .map_err(|_| value_error(key, format!("count must be a non-negative integer, got `{}`", parts[2])))?;
    if count > MAX_GRID_POINTS {
        return Err(value_error(key, format!("at most {MAX_GRID_POINTS} points")));
    }
    Ok(linspace(start, stop, count))
}

fn check_grid(key: &str, grid: &[f64]) -> Result<(), ConfigError> {
    if grid.is_empty() {
        return Err(value_error(key, "grid is empty"));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(value_error(key, "grid must be strictly ascending"));
    }
    Ok(())
}

impl SweepConfig {
    /// Build a validated config from raw pairs, later pairs overriding
    /// earlier ones.
    pub fn from_pairs<'a, I>(pairs: I) -> Result<Self, ConfigError>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let mut map: BTreeMap<&str, &str> = BTreeMap::new();
        for (k, v) in pairs {
            if !KEYS.contains(&k) {
                return Err(ConfigError::UnknownKey(k.to_string()));
            }
            map.insert(k, v);
        }
        let mut cfg = SweepConfig::default();
        let real = |key: &str| map.get(key).map(|v| parse_real(key, v)).transpose();

        for (key, slot) in [
            ("gamma1", &mut cfg.gamma1),
            ("gamma2", &mut cfg.gamma2),
            ("g1", &mut cfg.g1),
            ("g2", &mut cfg.g2),
            ("n_atoms", &mut cfg.n_atoms),
            ("gamma12", &mut cfg.gamma12),
            ("xi2", &mut cfg.xi2),
            ("tolerance", &mut cfg.tolerance),
            ("eigen_tolerance", &mut cfg.eigen_tolerance),
            ("test_diffusion_offset", &mut cfg.test_diffusion_offset),
        ] {
            if let Some(v) = real(key)? {
                *slot = v;
            }
        }

        let amplitude = map.contains_key("alpha1") || map.contains_key("alpha2");
        let rabi = map.contains_key("omega1") || map.contains_key("omega2");
        if amplitude && rabi {
            return Err(value_error("alpha1", "give either alpha1/alpha2 or omega1/omega2, not both"));
        }
        if amplitude {
            cfg.carrier = Carrier::Amplitude {
                alpha1: real("alpha1")?.unwrap_or(0.0),
                alpha2: real("alpha2")?.unwrap_or(0.0),
            };
        } else if rabi {
            cfg.carrier = Carrier::Rabi {
                omega1: real("omega1")?.unwrap_or(0.0),
                omega2: real("omega2")?.unwrap_or(0.0),
            };
        }

        if let Some(v) = map.get("theta") {
            cfg.theta = parse_list("theta", v)?;
        }
        cfg.omega = grid(&map, "omega", "omega_range")?.unwrap_or(cfg.omega);
        cfg.z = grid(&map, "z", "z_range")?.unwrap_or(cfg.z);
        if let Some(v) = map.get("mode") {
            cfg.mode = v.parse()?;
        }
        if let Some(v) = map.get("out") {
            cfg.out = Some(PathBuf::from(v));
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_raw(raw: &RawConfig) -> Result<Self, ConfigError> {
        Self::from_pairs(raw.iter().map(|(k, v)| (k.as_str(), v.as_str())))
    }

    fn validate(&self) -> Result<(), ConfigError> {
        check_grid("omega", &self.omega)?;
        check_grid("z", &self.z)?;
        if self.theta.is_empty() {
            return Err(value_error("theta", "list is empty"));
        }
        if self.z[0] < 0.0 {
            return Err(value_error("z", "positions must be non-negative"));
        }
        let positive = |t: f64| t > 0.0;
        if !positive(self.tolerance) || !positive(self.eigen_tolerance) {
            return Err(value_error("tolerance", "tolerances must be positive"));
        }
        if matches!(self.mode, Mode::Analytic | Mode::Compare) && self.gamma12 != 0.0 {
            return Err(value_error(
                "gamma12",
                format!("mode {} needs gamma12 = 0; use numeric or decoherence", self.mode),
            ));
        }
        self.medium()?;
        self.drive()?;
        Ok(())
    }

    pub fn medium(&self) -> Result<MediumParams, ConfigError> {
        MediumParams::new(self.gamma1, self.gamma2, self.g1, self.g2, self.n_atoms)
            .and_then(|p| p.with_gamma12(self.gamma12))
            .map_err(|e| value_error("medium", e.to_string()))
    }

    /// Drive with the first configured quadrature angle.
    pub fn drive(&self) -> Result<DriveState, ConfigError> {
        let p = self.medium()?;
        let theta = self.theta.first().copied().unwrap_or(0.0);
        match self.carrier {
            Carrier::Amplitude { alpha1, alpha2 } => build_drive(&p, alpha1, alpha2, self.xi2, theta),
            Carrier::Rabi { omega1, omega2 } => build_drive_from_rabi(&p, omega1, omega2, self.xi2, theta),
        }
        .map_err(|e| value_error("drive", e.to_string()))
    }
}

fn grid(map: &BTreeMap<&str, &str>, list_key: &str, range_key: &str) -> Result<Option<Vec<f64>>, ConfigError> {
    match (map.get(list_key), map.get(range_key)) {
        (Some(_), Some(_)) => Err(value_error(list_key, format!("give either `{list_key}` or `{range_key}`"))),
        (Some(v), None) => parse_list(list_key, v).map(Some),
        (None, Some(v)) => parse_range(range_key, v).map(Some),
        (None, None) => Ok(None),
    }
}
