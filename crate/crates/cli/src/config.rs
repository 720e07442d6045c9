//! Flat key-value run records.
//!
//! A config file is a TOML document without tables. Every key is optional;
//! command-line flags override file values. Numbers may be given as TOML
//! numbers or as strings such as `"-5/4"`.
//!
//! ```toml
//! # simulate
//! a = 2
//! b = 2
//! domain = "zero-mean"      # or "full"
//! resolution = 128
//! dt = 1e-3
//! t_end = 0.3
//! initial = "cos"           # zero | cos | sin | cos+half-cos2 | random
//! degree = 8                # random data only
//! amplitude = 1.0           # random data only
//! seed = 0
//! blowup_slope_threshold = 1e6
//! tail_ratio_threshold = 0.1
//! state_every = 0           # 0: no state dumps
//! precision = "double"      # or "double-double"
//! order_check = false
//!
//! # sweep
//! a_min = -3
//! a_max = 3
//! a_step = "3/50"
//! b_min = -3
//! b_max = 3
//! b_step = "3/50"
//! ```

use std::fs;
use std::path::Path;

use serde::Deserialize;
use vortmetric_core::Real;

use crate::error::CliError;

/// How decimal literals are read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum NumberMode {
    /// Decimal literals are exact rationals (`0.06 = 3/50`).
    #[default]
    Exact,
    /// Everything is a double.
    Float,
}

impl NumberMode {
    pub fn parse(self, s: &str) -> Result<Real, CliError> {
        let parsed = match self {
            NumberMode::Exact => Real::parse_exact(s),
            NumberMode::Float => Real::parse_float(s),
        };
        parsed.map_err(|e| CliError::usage(format!("cannot parse `{s}`: {e}")))
    }
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum Number {
    Int(i64),
    Float(f64),
    Text(String),
}

impl Number {
    /// Integers and strings follow `mode`; TOML floats are read through
    /// their shortest decimal so `0.06` means the same in both spellings.
    pub fn to_real(&self, mode: NumberMode) -> Result<Real, CliError> {
        match self {
            Number::Int(v) => mode.parse(&v.to_string()),
            Number::Float(x) => mode.parse(&crate::format::float(*x)),
            Number::Text(s) => mode.parse(s),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub a: Option<Number>,
    pub b: Option<Number>,
    pub domain: Option<String>,
    pub resolution: Option<usize>,
    pub dt: Option<f64>,
    pub t_end: Option<f64>,
    pub initial: Option<String>,
    pub degree: Option<usize>,
    pub amplitude: Option<f64>,
    pub seed: Option<u64>,
    pub blowup_slope_threshold: Option<f64>,
    pub tail_ratio_threshold: Option<f64>,
    pub state_every: Option<usize>,
    pub precision: Option<String>,
    pub order_check: Option<bool>,
    pub a_min: Option<Number>,
    pub a_max: Option<Number>,
    pub a_step: Option<Number>,
    pub b_min: Option<Number>,
    pub b_max: Option<Number>,
    pub b_step: Option<Number>,
}

impl FileConfig {
    pub fn parse(text: &str) -> Result<FileConfig, CliError> {
        toml::from_str(text).map_err(|e| CliError::usage(format!("config: {e}")))
    }

    pub fn load(path: &Path) -> Result<FileConfig, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("cannot read config {}: {e}", path.display())))?;
        FileConfig::parse(&text)
    }
}
