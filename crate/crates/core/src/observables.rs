//! Quadrature variances, the uncertainty product and `g²(0)` of a state
//! seen through the static-mode operators `a = u*A - vA†`, `a† = -v*A + uA†`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::dynamics::FrameAtTime;
use crate::error::{Error, Result};
use crate::ladder::OperatorSum;
use crate::states::{MomentTable, StateCoefficients};

/// Vacuum variance of either quadrature; also half the commutator
/// `|⟨[X₁, X₂]⟩|`.
pub const SQUEEZING_THRESHOLD: f64 = 0.5;
/// `⟨a†a⟩` below this leaves `g²(0)` undefined.
pub const VACUUM_FLOOR: f64 = 1e-300;
/// Moment order needed by every observable here.
pub const MOMENT_ORDER: usize = 4;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// `a = u* A - v A†`.
pub fn static_lowering(frame: &FrameAtTime) -> OperatorSum {
    OperatorSum::linear(frame.u.conj(), -frame.v)
}

/// `(X₁, X₂) = ((a + a†)/√2, (a - a†)/(√2 i))` in terms of `A`, `A†`.
pub fn quadratures(frame: &FrameAtTime) -> (OperatorSum, OperatorSum) {
    let a = static_lowering(frame);
    let ad = a.adjoint();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let x1 = (a.clone() + ad.clone()).scale(c(s));
    let x2 = (a - ad).scale(Complex64::new(0.0, -s));
    (x1, x2)
}

/// `F` and `G` from the closed-form expressions with the
/// `2 / (κ cos 2t + 4)` prefactor:
///
/// `F = p (ε²⟨A†²⟩ + ε*²⟨A²⟩ + 2|ε|²⟨A†A⟩ + |ε|²)`,
/// `G = p (ε̇²⟨A†²⟩ + ε̇*²⟨A²⟩ + 2|ε̇|²⟨A†A⟩ + |ε̇|²)`.
///
/// # Panics
/// If `moments` has order below 2.
pub fn squeezing_fg(moments: &MomentTable, frame: &FrameAtTime) -> (f64, f64) {
    let get = |j, k| {
        moments
            .get(j, k)
            .unwrap_or_else(|| panic!("moment table lacks ({j}, {k})"))
    };
    let (ad2, a2, n) = (get(2, 0), get(0, 2), get(1, 1));
    let prefactor = 2.0 / (frame.kappa * (2.0 * frame.t).cos() + 4.0);
    let quadratic = |e: Complex64| {
        let m = e.norm_sqr();
        (e * e * ad2 + e.conj() * e.conj() * a2 + n * (2.0 * m) + m).re
    };
    (prefactor * quadratic(frame.epsilon), prefactor * quadratic(frame.epsilon_dot))
}

/// `⟨ΔX_i²⟩ = ⟨X_i²⟩ - ⟨X_i⟩²` evaluated through the Bogoliubov map.
pub fn variance_direct(moments: &MomentTable, frame: &FrameAtTime) -> (f64, f64) {
    let (x1, x2) = quadratures(frame);
    let var = |x: &OperatorSum| {
        let mean = moments.expect_sum(x);
        (moments.expect_sum(&(x * x)) - mean * mean).re
    };
    (var(&x1), var(&x2))
}

/// `⟨a†a⟩`.
pub fn mean_number(moments: &MomentTable, frame: &FrameAtTime) -> f64 {
    let a = static_lowering(frame);
    moments.expect_sum(&(&a.adjoint() * &a)).re
}

/// `g²(0) = ⟨a†²a²⟩ / ⟨a†a⟩²`, with both numerator and denominator expanded
/// word by word from the Bogoliubov map.
pub fn g2(moments: &MomentTable, frame: &FrameAtTime) -> Result<f64> {
    let a = static_lowering(frame);
    let ad = a.adjoint();
    let mean = moments.expect_sum(&(&ad * &a)).re;
    if !(mean.abs() > VACUUM_FLOOR) {
        return Err(Error::VacuumDivergence { mean_number: mean });
    }
    let numerator = &(&(&ad * &ad) * &a) * &a;
    Ok(moments.expect_sum(&numerator).re / (mean * mean))
}

/// Observables at one instant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ObservableSample {
    pub t: f64,
    #[serde(rename = "F")]
    pub f: f64,
    #[serde(rename = "G")]
    pub g: f64,
    #[serde(rename = "varX1")]
    pub var_x1: f64,
    #[serde(rename = "varX2")]
    pub var_x2: f64,
    #[serde(rename = "product")]
    pub uncertainty_product: f64,
    #[serde(rename = "squeezed_X1")]
    pub squeezed_x1: bool,
    #[serde(rename = "squeezed_X2")]
    pub squeezed_x2: bool,
    /// `None` where `⟨a†a⟩` vanishes.
    pub g2: Option<f64>,
    pub wronskian_defect: f64,
}

/// A fixed state evolving under the modulated frequency with depth `kappa`.
#[derive(Debug, Clone)]
pub struct Evolution {
    moments: MomentTable,
    kappa: f64,
}

impl Evolution {
    pub fn new(state: &StateCoefficients, kappa: f64) -> Self {
        Self::from_moments(MomentTable::new(state, MOMENT_ORDER), kappa)
    }

    pub fn from_moments(moments: MomentTable, kappa: f64) -> Self {
        Self { moments, kappa }
    }

    pub fn moments(&self) -> &MomentTable {
        &self.moments
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn frame(&self, t: f64) -> FrameAtTime {
        FrameAtTime::analytic(t, self.kappa)
    }

    pub fn fg(&self, t: f64) -> (f64, f64) {
        squeezing_fg(&self.moments, &self.frame(t))
    }

    pub fn sample(&self, t: f64) -> Result<ObservableSample> {
        let frame = self.frame(t);
        let (f, g) = squeezing_fg(&self.moments, &frame);
        let (var_x1, var_x2) = variance_direct(&self.moments, &frame);
        let g2 = match g2(&self.moments, &frame) {
            Ok(v) => Some(v),
            Err(Error::VacuumDivergence { .. }) => None,
            Err(e) => return Err(e),
        };
        let sample = ObservableSample {
            t,
            f,
            g,
            var_x1,
            var_x2,
            uncertainty_product: f * g,
            squeezed_x1: f < SQUEEZING_THRESHOLD,
            squeezed_x2: g < SQUEEZING_THRESHOLD,
            g2,
            wronskian_defect: frame.wronskian_defect(),
        };
        let finite = [f, g, var_x1, var_x2, sample.wronskian_defect]
            .iter()
            .chain(g2.iter())
            .all(|x| x.is_finite());
        if !finite {
            return Err(Error::InvalidParameter(format!("non-finite observable at t = {t}")));
        }
        Ok(sample)
    }

    /// One sample per grid point, in grid order. Points are evaluated in
    /// parallel; failures are collected with their indices.
    pub fn sweep(&self, grid: &[f64]) -> Result<Vec<ObservableSample>> {
        if grid.windows(2).any(|w| !(w[1] >= w[0])) {
            return Err(Error::InvalidParameter("time grid must be non-decreasing".into()));
        }
        let results: Vec<Result<ObservableSample>> = grid.par_iter().map(|&t| self.sample(t)).collect();
        let failures: Vec<(usize, f64, String)> = results
            .iter()
            .enumerate()
            .filter_map(|(i, r)| r.as_ref().err().map(|e| (i, grid[i], e.to_string())))
            .collect();
        if !failures.is_empty() {
            return Err(Error::Sweep { failures });
        }
        Ok(results.into_iter().map(|r| r.expect("checked above")).collect())
    }

    /// Times at which `|F - ½| ≤ tol` and `|G - ½| ≤ tol` hold together.
    ///
    /// Qualifying grid points are returned as is. Between neighbours on
    /// opposite sides of the condition the boundary is located by bisection,
    /// and a dip between three non-qualifying points is probed by a
    /// golden-section search.
    pub fn intelligent_times(&self, samples: &[ObservableSample], tol: f64) -> Vec<f64> {
        let excess = |f: f64, g: f64| (f - SQUEEZING_THRESHOLD).abs().max((g - SQUEEZING_THRESHOLD).abs()) - tol;
        let at = |t: f64| {
            let (f, g) = self.fg(t);
            excess(f, g)
        };
        let h: Vec<f64> = samples.iter().map(|s| excess(s.f, s.g)).collect();
        let mut times = Vec::new();

        for (i, s) in samples.iter().enumerate() {
            if h[i] <= 0.0 {
                times.push(s.t);
            }
        }
        for i in 0..samples.len().saturating_sub(1) {
            let (lo, hi) = (samples[i].t, samples[i + 1].t);
            if (h[i] <= 0.0) != (h[i + 1] <= 0.0) {
                let inside_left = h[i] <= 0.0;
                let (mut a, mut b) = (lo, hi);
                for _ in 0..80 {
                    let mid = 0.5 * (a + b);
                    if (at(mid) <= 0.0) == inside_left {
                        a = mid;
                    } else {
                        b = mid;
                    }
                }
                times.push(if inside_left { a } else { b });
            }
        }
        for i in 1..samples.len().saturating_sub(1) {
            if h[i - 1] > 0.0 && h[i] > 0.0 && h[i + 1] > 0.0 && h[i] <= h[i - 1] && h[i] <= h[i + 1] {
                let (t_min, h_min) = golden_min(&at, samples[i - 1].t, samples[i + 1].t);
                if h_min <= 0.0 {
                    times.push(t_min);
                }
            }
        }
        times.sort_by(f64::total_cmp);
        times.dedup_by(|a, b| (*a - *b).abs() <= 1e-12);
        times
    }
}

fn golden_min<F: Fn(f64) -> f64>(func: &F, mut a: f64, mut b: f64) -> (f64, f64) {
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - ratio * (b - a);
    let mut x2 = a + ratio * (b - a);
    let (mut f1, mut f2) = (func(x1), func(x2));
    for _ in 0..100 {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - ratio * (b - a);
            f1 = func(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + ratio * (b - a);
            f2 = func(x2);
        }
        if b - a <= 1e-13 * b.abs().max(1.0) {
            break;
        }
    }
    if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// `steps` equally spaced times on `[0, t_max]`, both ends included.
pub fn time_grid(t_max: f64, steps: usize) -> Result<Vec<f64>> {
    if steps < 2 || !(t_max > 0.0) || !t_max.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "need steps >= 2 and t_max > 0, got steps = {steps}, t_max = {t_max}"
        )));
    }
    let last = (steps - 1) as f64;
    Ok((0..steps).map(|i| t_max * i as f64 / last).collect())
}

/// Maximal runs of consecutive samples satisfying `pred`, as
/// `(first t, last t)` pairs.
pub fn sampled_intervals<P: Fn(&ObservableSample) -> bool>(samples: &[ObservableSample], pred: P) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    let mut start: Option<f64> = None;
    let mut last = 0.0;
    for s in samples {
        if pred(s) {
            start.get_or_insert(s.t);
            last = s.t;
        } else if let Some(t0) = start.take() {
            out.push((t0, last));
        }
    }
    if let Some(t0) = start {
        out.push((t0, last));
    }
    out
}

/// Least-squares slope of `ys` against `xs`.
pub fn fitted_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}
