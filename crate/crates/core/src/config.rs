//! Run configuration shared by the command-line front end: defaults, a
//! line-based `key = value` file, and flag overrides, all funnelled through
//! [`RunConfig::set`].

use std::fmt;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use thiserror::Error;

use crate::nonlinearity::Nonlinearity;
use crate::observables::time_grid;
use crate::states::{Parity, Truncation, DEFAULT_CAP};

/// Version tag written into every CSV and JSON output.
pub const SCHEMA_VERSION: u32 = 1;
pub const MAX_KAPPA: f64 = 0.1;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("unknown key '{0}'")]
    UnknownKey(String),
    #[error("bad value '{value}' for '{key}': {reason}")]
    BadValue { key: String, value: String, reason: String },
    #[error("{path}:{line}: {reason}")]
    Syntax { path: String, line: usize, reason: String },
    #[error("cannot read {path}: {reason}")]
    Io { path: String, reason: String },
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateKind {
    Even,
    Odd,
    Nlcs,
}

impl StateKind {
    pub fn parity(self) -> Parity {
        match self {
            StateKind::Even => Parity::Even,
            StateKind::Odd => Parity::Odd,
            StateKind::Nlcs => Parity::Any,
        }
    }
}

impl fmt::Display for StateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StateKind::Even => "even",
            StateKind::Odd => "odd",
            StateKind::Nlcs => "nlcs",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NonlinearityKind {
    TrappedIon,
    Identity,
}

impl fmt::Display for NonlinearityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NonlinearityKind::TrappedIon => "trapped-ion",
            NonlinearityKind::Identity => "identity",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    fn from_extension(path: &Path) -> Option<Self> {
        match path.extension()?.to_str()?.to_ascii_lowercase().as_str() {
            "csv" => Some(OutputFormat::Csv),
            "json" => Some(OutputFormat::Json),
            _ => None,
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub state: StateKind,
    pub alpha: Complex64,
    pub eta: f64,
    pub kappa: f64,
    pub nonlinearity: NonlinearityKind,
    pub t_max: f64,
    pub steps: usize,
    /// `None` selects the adaptive cut.
    pub truncation: Option<usize>,
    /// `None` writes to standard output.
    pub output: Option<PathBuf>,
    /// `None` infers from the output extension, falling back to CSV.
    pub format: Option<OutputFormat>,
    /// Tolerance for intelligent-time detection in reports.
    pub tol: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            state: StateKind::Even,
            alpha: Complex64::new(1.0, 0.0),
            eta: 0.1,
            kappa: 0.01,
            nonlinearity: NonlinearityKind::TrappedIon,
            t_max: 20.0,
            steps: 400,
            truncation: None,
            output: None,
            format: None,
            tol: 5e-3,
        }
    }
}

/// `"x"` or `"re,im"`.
pub fn parse_alpha(s: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |p: &str| p.parse::<f64>().map_err(|e| format!("{p:?}: {e}"));
    let alpha = match parts.as_slice() {
        [re] => Complex64::new(num(re)?, 0.0),
        [re, im] => Complex64::new(num(re)?, num(im)?),
        _ => return Err("expected a real number or 're,im'".into()),
    };
    if !alpha.re.is_finite() || !alpha.im.is_finite() {
        return Err("alpha must be finite".into());
    }
    Ok(alpha)
}

pub fn format_alpha(alpha: Complex64) -> String {
    format!("{},{}", alpha.re, alpha.im)
}

impl RunConfig {
    /// Sets one option from its textual form. Keys match the long flag
    /// names without dashes.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        let value = value.trim();
        let bad = |reason: String| ConfigError::BadValue {
            key: key.to_string(),
            value: value.to_string(),
            reason,
        };
        let float = || value.parse::<f64>().map_err(|e| bad(e.to_string()));
        match key {
            "state" => {
                self.state = match value {
                    "even" => StateKind::Even,
                    "odd" => StateKind::Odd,
                    "nlcs" => StateKind::Nlcs,
                    _ => return Err(bad("expected even, odd or nlcs".into())),
                }
            }
            "alpha" => self.alpha = parse_alpha(value).map_err(bad)?,
            "eta" => self.eta = float()?,
            "kappa" => self.kappa = float()?,
            "nonlinearity" => {
                self.nonlinearity = match value {
                    "trapped-ion" => NonlinearityKind::TrappedIon,
                    "identity" => NonlinearityKind::Identity,
                    _ => return Err(bad("expected trapped-ion or identity".into())),
                }
            }
            "tmax" => self.t_max = float()?,
            "steps" => self.steps = value.parse().map_err(|e: std::num::ParseIntError| bad(e.to_string()))?,
            "truncation" => {
                self.truncation = match value {
                    "auto" => None,
                    n => Some(n.parse().map_err(|_| bad("expected 'auto' or a non-negative integer".into()))?),
                }
            }
            "out" => self.output = if value == "-" { None } else { Some(PathBuf::from(value)) },
            "format" => {
                self.format = Some(match value {
                    "csv" => OutputFormat::Csv,
                    "json" => OutputFormat::Json,
                    _ => return Err(bad("expected csv or json".into())),
                })
            }
            "tol" => self.tol = float()?,
            _ => return Err(ConfigError::UnknownKey(key.to_string())),
        }
        Ok(())
    }

    /// Applies `key = value` lines. Blank lines and lines starting with `#`
    /// are skipped.
    pub fn apply_text(&mut self, text: &str, origin: &str) -> Result<(), ConfigError> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| ConfigError::Syntax {
                path: origin.to_string(),
                line: i + 1,
                reason: "expected key = value".into(),
            })?;
            self.set(key.trim(), value)?;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<(), ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io {
            path: path.display().to_string(),
            reason: e.to_string(),
        })?;
        self.apply_text(&text, &path.display().to_string())
    }

    pub fn resolved_format(&self) -> OutputFormat {
        self.format
            .or_else(|| self.output.as_deref().and_then(OutputFormat::from_extension))
            .unwrap_or(OutputFormat::Csv)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let invalid = |m: String| Err(ConfigError::Invalid(m));
        if self.steps < 2 {
            return invalid(format!("steps must be >= 2, got {}", self.steps));
        }
        if !(self.t_max > 0.0) || !self.t_max.is_finite() {
            return invalid(format!("tmax must be positive, got {}", self.t_max));
        }
        if !(0.0..=MAX_KAPPA).contains(&self.kappa) {
            return invalid(format!("kappa must lie in [0, {MAX_KAPPA}], got {}", self.kappa));
        }
        if !(self.eta >= 0.0) || !self.eta.is_finite() {
            return invalid(format!("eta must be finite and >= 0, got {}", self.eta));
        }
        if !(self.tol > 0.0) || !self.tol.is_finite() {
            return invalid(format!("tol must be positive, got {}", self.tol));
        }
        if let (Some(format), Some(path)) = (self.format, self.output.as_deref()) {
            if let Some(ext) = OutputFormat::from_extension(path) {
                if ext != format {
                    return invalid(format!(
                        "output path {} does not match format {format}",
                        path.display()
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn nonlinearity(&self) -> Nonlinearity {
        match self.nonlinearity {
            NonlinearityKind::Identity => Nonlinearity::Identity,
            NonlinearityKind::TrappedIon => Nonlinearity::TrappedIon { eta: self.eta },
        }
    }

    pub fn truncation(&self) -> Truncation {
        match self.truncation {
            Some(n) => Truncation::Fixed(n),
            None => Truncation::Auto { cap: DEFAULT_CAP },
        }
    }

    pub fn grid(&self) -> Vec<f64> {
        time_grid(self.t_max, self.steps).expect("validated config")
    }

    /// `(key, value)` pairs in file syntax; applying them to a default
    /// config reproduces this one.
    pub fn echo(&self) -> Vec<(&'static str, String)> {
        vec![
            ("state", self.state.to_string()),
            ("alpha", format_alpha(self.alpha)),
            ("eta", self.eta.to_string()),
            ("kappa", self.kappa.to_string()),
            ("nonlinearity", self.nonlinearity.to_string()),
            ("tmax", self.t_max.to_string()),
            ("steps", self.steps.to_string()),
            (
                "truncation",
                self.truncation.map_or_else(|| "auto".to_string(), |n| n.to_string()),
            ),
            ("format", self.resolved_format().to_string()),
            ("tol", self.tol.to_string()),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_forms() {
        assert_eq!(parse_alpha("1.5").unwrap(), Complex64::new(1.5, 0.0));
        assert_eq!(parse_alpha("0.5, -2").unwrap(), Complex64::new(0.5, -2.0));
        assert!(parse_alpha("1,2,3").is_err());
        assert!(parse_alpha("x").is_err());
        assert!(parse_alpha("inf").is_err());
    }

    #[test]
    fn file_then_flags() {
        let mut cfg = RunConfig::default();
        cfg.apply_text("# run\nstate = odd\n\nalpha=0.5,0.25\ntruncation = 40\n", "t.cfg")
            .unwrap();
        cfg.set("alpha", "2").unwrap();
        assert_eq!(cfg.state, StateKind::Odd);
        assert_eq!(cfg.alpha, Complex64::new(2.0, 0.0));
        assert_eq!(cfg.truncation, Some(40));
        assert!(matches!(
            cfg.apply_text("steps 4", "t.cfg"),
            Err(ConfigError::Syntax { line: 1, .. })
        ));
        assert!(matches!(cfg.set("colour", "red"), Err(ConfigError::UnknownKey(_))));
    }

    #[test]
    fn echo_round_trips() {
        let mut cfg = RunConfig::default();
        cfg.set("alpha", "0.3,-0.7").unwrap();
        cfg.set("state", "nlcs").unwrap();
        cfg.set("truncation", "33").unwrap();
        let mut back = RunConfig::default();
        for (k, v) in cfg.echo() {
            back.set(k, &v).unwrap();
        }
        back.format = None;
        assert_eq!(back, cfg);
    }

    #[test]
    fn validation_rules() {
        let ok = RunConfig::default();
        assert!(ok.validate().is_ok());
        for (k, v) in [("steps", "1"), ("tmax", "0"), ("kappa", "0.2"), ("kappa", "-0.01"), ("eta", "-1")] {
            let mut cfg = RunConfig::default();
            cfg.set(k, v).unwrap();
            assert!(cfg.validate().is_err(), "{k}={v}");
        }
        let mut cfg = RunConfig::default();
        cfg.set("out", "run.json").unwrap();
        assert_eq!(cfg.resolved_format(), OutputFormat::Json);
        cfg.set("format", "csv").unwrap();
        assert!(cfg.validate().is_err());
    }
}
