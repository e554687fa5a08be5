//! Human-readable summary of a sweep: squeezing intervals, intelligent
//! times, `g²` extremes, and the qualitative behaviour expected of even and
//! odd states.

use std::fmt;

use crate::config::StateKind;
use crate::observables::{fitted_slope, sampled_intervals};
use crate::output::SweepRun;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClaimStatus {
    Holds,
    Fails,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Claim {
    pub name: &'static str,
    pub status: ClaimStatus,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Intelligent {
    AllSampled,
    Times(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Antibunching {
    /// `g² < 1` from the first sample up to (excluding) `end`.
    Initial { end: f64 },
    /// `g² < 1` at every sample up to the last one, `end`.
    Everywhere { end: f64 },
    /// Not antibunched at `t = 0`, but somewhere later.
    Later(Vec<(f64, f64)>),
    None,
    Undefined,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub header: String,
    pub squeezing_x1: Vec<(f64, f64)>,
    pub squeezing_x2: Vec<(f64, f64)>,
    /// `min_t min(F, G)`.
    pub min_fg: f64,
    pub intelligent: Intelligent,
    pub tol: f64,
    /// `(value, t)` of the smallest and largest defined `g²`.
    pub g2_min: Option<(f64, f64)>,
    pub g2_max: Option<(f64, f64)>,
    pub g2_slope: Option<f64>,
    pub antibunching: Antibunching,
    pub wronskian_max: f64,
    pub claims: Vec<Claim>,
}

fn status(ok: bool) -> ClaimStatus {
    if ok {
        ClaimStatus::Holds
    } else {
        ClaimStatus::Fails
    }
}

impl Report {
    pub fn new(run: &SweepRun) -> Self {
        let cfg = &run.config;
        let samples = &run.samples;
        let header = format!(
            "state {} alpha={} eta={} ({}) kappa={} | {} samples on [0, {}] | n_trunc={} tail={:.1e}",
            cfg.state,
            crate::config::format_alpha(cfg.alpha),
            cfg.eta,
            cfg.nonlinearity,
            cfg.kappa,
            samples.len(),
            cfg.t_max,
            run.state.n_trunc,
            run.state.tail_bound,
        );

        let squeezing_x1 = sampled_intervals(samples, |s| s.squeezed_x1);
        let squeezing_x2 = sampled_intervals(samples, |s| s.squeezed_x2);
        let min_fg = samples.iter().map(|s| s.f.min(s.g)).fold(f64::INFINITY, f64::min);

        let times = run.evolution.intelligent_times(samples, cfg.tol);
        let all = samples.iter().all(|s| times.iter().any(|&t| t == s.t));
        let intelligent = if all {
            Intelligent::AllSampled
        } else {
            Intelligent::Times(times)
        };

        let defined: Vec<(f64, f64)> = samples.iter().filter_map(|s| s.g2.map(|g| (s.t, g))).collect();
        let extreme = |better: fn(f64, f64) -> bool| {
            defined
                .iter()
                .fold(None, |acc: Option<(f64, f64)>, &(t, g)| match acc {
                    Some((v, _)) if !better(g, v) => acc,
                    _ => Some((g, t)),
                })
        };
        let g2_min = extreme(|a, b| a < b);
        let g2_max = extreme(|a, b| a > b);
        let g2_slope = (defined.len() >= 2).then(|| {
            let (ts, gs): (Vec<f64>, Vec<f64>) = defined.iter().copied().unzip();
            fitted_slope(&ts, &gs)
        });

        let below = |s: &crate::observables::ObservableSample| s.g2.is_some_and(|g| g < 1.0);
        let antibunching = if defined.len() < samples.len() {
            Antibunching::Undefined
        } else if samples.iter().all(below) {
            Antibunching::Everywhere {
                end: samples[samples.len() - 1].t,
            }
        } else if below(&samples[0]) {
            let end = samples.iter().find(|s| !below(s)).map(|s| s.t).expect("not everywhere");
            Antibunching::Initial { end }
        } else {
            let runs = sampled_intervals(samples, below);
            if runs.is_empty() {
                Antibunching::None
            } else {
                Antibunching::Later(runs)
            }
        };

        let squeezes_both = !squeezing_x1.is_empty() && !squeezing_x2.is_empty();
        let claims = match cfg.state {
            StateKind::Even => vec![
                Claim {
                    name: "even state squeezes in both quadratures",
                    status: status(squeezes_both),
                },
                Claim {
                    name: "even state never antibunches",
                    status: status(defined.len() == samples.len() && defined.iter().all(|&(_, g)| g > 1.0)),
                },
            ],
            StateKind::Odd => vec![
                Claim {
                    name: "odd state antibunches initially with an increasing g2 trend",
                    status: status(
                        matches!(antibunching, Antibunching::Initial { .. } | Antibunching::Everywhere { .. })
                            && g2_slope.is_some_and(|s| s > 0.0),
                    ),
                },
                Claim {
                    name: "odd state never squeezes",
                    status: status(squeezing_x1.is_empty() && squeezing_x2.is_empty()),
                },
            ],
            StateKind::Nlcs => Vec::new(),
        };

        Self {
            header,
            squeezing_x1,
            squeezing_x2,
            min_fg,
            intelligent,
            tol: cfg.tol,
            g2_min,
            g2_max,
            g2_slope,
            antibunching,
            wronskian_max: run.max_wronskian_defect(),
            claims,
        }
    }
}

fn intervals(list: &[(f64, f64)]) -> String {
    if list.is_empty() {
        return "none".into();
    }
    list.iter()
        .map(|(a, b)| format!("[{a:.4}, {b:.4}]"))
        .collect::<Vec<_>>()
        .join(", ")
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.header)?;
        writeln!(f, "wronskian defect: max {:.3e}", self.wronskian_max)?;
        writeln!(f, "squeezing X1 (F < 1/2): {}", intervals(&self.squeezing_x1))?;
        writeln!(f, "squeezing X2 (G < 1/2): {}", intervals(&self.squeezing_x2))?;
        writeln!(f, "min over t of min(F, G): {:.6}", self.min_fg)?;
        match &self.intelligent {
            Intelligent::AllSampled => writeln!(f, "intelligent at all sampled times (tol {:e})", self.tol)?,
            Intelligent::Times(ts) if ts.is_empty() => {
                writeln!(f, "intelligent times (tol {:e}): none", self.tol)?
            }
            Intelligent::Times(ts) => {
                let list: Vec<String> = ts.iter().map(|t| format!("{t:.6}")).collect();
                writeln!(f, "intelligent times (tol {:e}): {}", self.tol, list.join(", "))?
            }
        }
        match (self.g2_min, self.g2_max) {
            (Some((lo, tlo)), Some((hi, thi))) => writeln!(
                f,
                "g2: min {lo:.6} at t = {tlo:.4}, max {hi:.6} at t = {thi:.4}, fitted slope {:.3e}",
                self.g2_slope.unwrap_or(f64::NAN)
            )?,
            _ => writeln!(f, "g2: undefined at every sample (<a†a> = 0)")?,
        }
        match &self.antibunching {
            Antibunching::Initial { end } => writeln!(f, "antibunching: g² < 1 on [0, {end:.4})")?,
            Antibunching::Everywhere { end } => {
                writeln!(f, "antibunching: g² < 1 on [0, {end:.4}] (every sample)")?
            }
            Antibunching::Later(runs) => writeln!(f, "antibunching: g² < 1 on {}", intervals(runs))?,
            Antibunching::None => writeln!(f, "antibunching: no antibunching detected")?,
            Antibunching::Undefined => writeln!(f, "antibunching: g² undefined at some samples")?,
        }
        if !self.claims.is_empty() {
            writeln!(f, "claims:")?;
            for c in &self.claims {
                let s = match c.status {
                    ClaimStatus::Holds => "holds",
                    ClaimStatus::Fails => "does not hold",
                };
                writeln!(f, "  {}: {s}", c.name)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::RunConfig;

    fn report(pairs: &[(&str, &str)]) -> (Report, String) {
        let mut cfg = RunConfig::default();
        for (k, v) in pairs {
            cfg.set(k, v).unwrap();
        }
        let r = Report::new(&SweepRun::compute(&cfg).unwrap());
        let text = r.to_string();
        (r, text)
    }

    #[test]
    fn vacuum_is_intelligent_everywhere() {
        let (r, text) = report(&[("state", "nlcs"), ("alpha", "0"), ("kappa", "0"), ("steps", "50")]);
        assert_eq!(r.intelligent, Intelligent::AllSampled);
        assert!(text.contains("intelligent at all sampled times"));
    }

    #[test]
    fn odd_state_antibunches() {
        let (r, text) = report(&[("state", "odd"), ("alpha", "1"), ("eta", "0.1"), ("kappa", "0.01")]);
        assert!(text.contains("g² < 1 on [0, "), "{text}");
        assert!(r.claims.iter().all(|c| c.status == ClaimStatus::Holds), "{text}");
    }

    #[test]
    fn even_state_never_antibunches() {
        let (r, text) = report(&[("state", "even"), ("alpha", "1"), ("eta", "0.1"), ("kappa", "0.01")]);
        assert!(text.contains("no antibunching detected"), "{text}");
        assert!(r.claims.iter().all(|c| c.status == ClaimStatus::Holds), "{text}");
        assert!(!r.squeezing_x1.is_empty() && !r.squeezing_x2.is_empty());
    }
}
