//! Sweep execution and its CSV / JSON serialisations.

use std::io::{self, Write};

use serde::Serialize;

use crate::config::{OutputFormat, RunConfig, SCHEMA_VERSION};
use crate::error::Result;
use crate::observables::{Evolution, ObservableSample};
use crate::states::{build_state, StateCoefficients};

pub const CSV_HEADER: [&str; 10] = [
    "t",
    "F",
    "G",
    "varX1",
    "varX2",
    "product",
    "squeezed_X1",
    "squeezed_X2",
    "g2",
    "wronskian_defect",
];

/// A completed sweep together with everything needed to describe it.
#[derive(Debug, Clone)]
pub struct SweepRun {
    pub config: RunConfig,
    pub state: StateCoefficients,
    pub evolution: Evolution,
    pub samples: Vec<ObservableSample>,
}

impl SweepRun {
    /// Builds the configured state and samples it on the configured grid.
    /// The config is assumed to have passed [`RunConfig::validate`].
    pub fn compute(config: &RunConfig) -> Result<Self> {
        let state = build_state(
            config.state.parity(),
            config.alpha,
            &config.nonlinearity(),
            config.truncation(),
        )?;
        let evolution = Evolution::new(&state, config.kappa);
        let samples = evolution.sweep(&config.grid())?;
        Ok(Self {
            config: config.clone(),
            state,
            evolution,
            samples,
        })
    }

    pub fn max_wronskian_defect(&self) -> f64 {
        self.samples.iter().map(|s| s.wronskian_defect).fold(0.0, f64::max)
    }

    pub fn mean_wronskian_defect(&self) -> f64 {
        self.samples.iter().map(|s| s.wronskian_defect).sum::<f64>() / self.samples.len() as f64
    }

    pub fn write(&self, out: &mut dyn Write) -> io::Result<()> {
        match self.config.resolved_format() {
            OutputFormat::Csv => self.write_csv(out),
            OutputFormat::Json => self.write_json(out),
        }
    }

    pub fn write_csv(&self, out: &mut dyn Write) -> io::Result<()> {
        writeln!(out, "# nlcs sweep schema_version={SCHEMA_VERSION}")?;
        let echo: Vec<String> = self
            .config
            .echo()
            .into_iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        writeln!(out, "# config {}", echo.join(" "))?;
        writeln!(
            out,
            "# truncation n_trunc={} tail_bound={:e}",
            self.state.n_trunc, self.state.tail_bound
        )?;
        writeln!(
            out,
            "# wronskian_defect max={:e} mean={:e}",
            self.max_wronskian_defect(),
            self.mean_wronskian_defect()
        )?;
        if self.state.degenerate {
            writeln!(out, "# degenerate: odd state at alpha=0 taken as the Fock state |1>")?;
        }
        let mut w = csv::Writer::from_writer(out);
        w.write_record(CSV_HEADER)?;
        for s in &self.samples {
            w.write_record([
                s.t.to_string(),
                s.f.to_string(),
                s.g.to_string(),
                s.var_x1.to_string(),
                s.var_x2.to_string(),
                s.uncertainty_product.to_string(),
                s.squeezed_x1.to_string(),
                s.squeezed_x2.to_string(),
                s.g2.map_or_else(|| "NaN".to_string(), |g| g.to_string()),
                s.wronskian_defect.to_string(),
            ])?;
        }
        w.flush()
    }

    pub fn write_json(&self, out: &mut dyn Write) -> io::Result<()> {
        #[derive(Serialize)]
        struct Truncation {
            n_trunc: usize,
            tail_bound: f64,
        }
        #[derive(Serialize)]
        struct Document<'a> {
            schema_version: u32,
            config: serde_json::Map<String, serde_json::Value>,
            alpha: [f64; 2],
            truncation: Truncation,
            degenerate: bool,
            wronskian_defect_max: f64,
            wronskian_defect_mean: f64,
            samples: &'a [ObservableSample],
        }
        let config = self
            .config
            .echo()
            .into_iter()
            .map(|(k, v)| (k.to_string(), serde_json::Value::String(v)))
            .collect();
        let doc = Document {
            schema_version: SCHEMA_VERSION,
            config,
            alpha: [self.config.alpha.re, self.config.alpha.im],
            truncation: Truncation {
                n_trunc: self.state.n_trunc,
                tail_bound: self.state.tail_bound,
            },
            degenerate: self.state.degenerate,
            wronskian_defect_max: self.max_wronskian_defect(),
            wronskian_defect_mean: self.mean_wronskian_defect(),
            samples: &self.samples,
        };
        serde_json::to_writer_pretty(&mut *out, &doc)?;
        writeln!(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(cfg: &RunConfig) -> SweepRun {
        SweepRun::compute(cfg).unwrap()
    }

    #[test]
    fn csv_layout() {
        let mut cfg = RunConfig::default();
        cfg.steps = 5;
        let mut buf = Vec::new();
        run(&cfg).write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert!(lines[0].starts_with("# nlcs sweep schema_version=1"));
        let header = lines.iter().position(|l| !l.starts_with('#')).unwrap();
        assert_eq!(lines[header], CSV_HEADER.join(","));
        assert_eq!(lines.len() - header - 1, 5);
    }

    #[test]
    fn json_has_schema_and_samples() {
        let mut cfg = RunConfig::default();
        cfg.steps = 3;
        cfg.set("format", "json").unwrap();
        let mut buf = Vec::new();
        run(&cfg).write(&mut buf).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["samples"].as_array().unwrap().len(), 3);
        assert!(v["samples"][0]["F"].is_number());
    }

    #[test]
    fn degenerate_flag_in_header() {
        let mut cfg = RunConfig::default();
        cfg.set("state", "odd").unwrap();
        cfg.set("alpha", "0").unwrap();
        cfg.steps = 3;
        let mut buf = Vec::new();
        run(&cfg).write_csv(&mut buf).unwrap();
        assert!(String::from_utf8(buf).unwrap().contains("# degenerate"));
    }
}
