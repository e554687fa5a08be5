use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("Laguerre degree {degree} exceeds the hard cap {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },

    /// `f(n)` is unusable: `L_n^0(η²)` vanishes (or `f(n)` itself is zero,
    /// which makes `d_n` infinite).
    #[error("nonlinearity singular at n = {n} (eta = {eta})")]
    NonlinearitySingular { n: usize, eta: f64 },

    #[error("series tail not below threshold under cap {cap} (tail ratio {tail:e})")]
    TruncationNotConverged { cap: usize, tail: f64 },

    #[error("ODE step controller failed at t = {t} (step {step:e})")]
    StepFailure { t: f64, step: f64 },

    #[error("<a†a> = {mean_number:e} is too small to normalise g2")]
    VacuumDivergence { mean_number: f64 },

    #[error("matrix dimension {dim} too small, need at least {required}")]
    DimensionTooSmall { dim: usize, required: usize },

    #[error("sweep failed at {} point(s); first at index {} (t = {}): {}", failures.len(), failures[0].0, failures[0].1, failures[0].2)]
    Sweep { failures: Vec<(usize, f64, String)> },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
