use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::distance::DEFAULT_RADIUS_STEPS;
use crate::error::{Error, Result};
use crate::frechet::DEFAULT_TOLERANCE;
use crate::matching::DEFAULT_CELL_SIZE;
use crate::signature::Ramp;

/// Settings for a full comparison run. Read from `key = value` lines; the
/// keys are the long CLI flag names.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub from: Option<PathBuf>,
    pub to: Option<PathBuf>,
    pub k: Vec<usize>,
    pub tolerance: f64,
    pub workers: usize,
    pub out_dir: PathBuf,
    pub contract: bool,
    pub strict: bool,
    pub both: bool,
    pub ramp: Ramp,
    pub radius_steps: usize,
    pub cell_size: f64,
    pub exhaustive: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            from: None,
            to: None,
            k: vec![1, 2, 3],
            tolerance: DEFAULT_TOLERANCE,
            workers: 1,
            out_dir: PathBuf::from("out"),
            contract: false,
            strict: false,
            both: false,
            ramp: Ramp::Quantile,
            radius_steps: DEFAULT_RADIUS_STEPS,
            cell_size: DEFAULT_CELL_SIZE,
            exhaustive: false,
        }
    }
}

fn parse<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value.parse().map_err(|_| Error::Usage(format!("bad value {value:?} for {key}")))
}

fn parse_bool(key: &str, value: &str) -> Result<bool> {
    match value.to_ascii_lowercase().as_str() {
        "true" | "yes" | "1" | "on" => Ok(true),
        "false" | "no" | "0" | "off" => Ok(false),
        _ => Err(Error::Usage(format!("bad boolean {value:?} for {key}"))),
    }
}

impl RunConfig {
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let key = key.trim().trim_start_matches("--").replace('-', "_");
        let value = value.trim();
        match key.as_str() {
            "from" => self.from = Some(PathBuf::from(value)),
            "to" => self.to = Some(PathBuf::from(value)),
            "k" => {
                self.k = value.split(',').map(|s| parse::<usize>("k", s.trim())).collect::<Result<_>>()?;
            }
            "tol" | "tolerance" => self.tolerance = parse(&key, value)?,
            "workers" => self.workers = parse(&key, value)?,
            "out_dir" => self.out_dir = PathBuf::from(value),
            "contract" => self.contract = parse_bool(&key, value)?,
            "strict" => self.strict = parse_bool(&key, value)?,
            "both" => self.both = parse_bool(&key, value)?,
            "ramp" => self.ramp = value.parse()?,
            "radius_steps" => self.radius_steps = parse(&key, value)?,
            "cell_size" => self.cell_size = parse(&key, value)?,
            "exhaustive" => self.exhaustive = parse_bool(&key, value)?,
            other => return Err(Error::Usage(format!("unknown config key {other:?}"))),
        }
        Ok(())
    }

    /// Applies `key = value` lines on top of the current values. Blank lines
    /// and `#` comments are skipped.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Usage(format!("config line {}: expected key = value", i + 1)))?;
            self.set(k, v).map_err(|e| Error::Usage(format!("config line {}: {e}", i + 1)))?;
        }
        Ok(())
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| match e.kind() {
            std::io::ErrorKind::NotFound => Error::MissingFile(path.to_path_buf()),
            _ => Error::Io(e),
        })?;
        let mut cfg = Self::default();
        cfg.apply_text(&text)?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.from.is_none() || self.to.is_none() {
            return Err(Error::Usage("both `from` and `to` graphs are required".into()));
        }
        if !(self.tolerance > 0.0) {
            return Err(Error::Usage(format!("tolerance must be positive, got {}", self.tolerance)));
        }
        if self.workers == 0 {
            return Err(Error::Usage("workers must be at least 1".into()));
        }
        if self.k.is_empty() || self.k.contains(&0) {
            return Err(Error::Usage("k values must be at least 1".into()));
        }
        Ok(())
    }
}
