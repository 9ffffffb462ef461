use num_complex::Complex64;
use thiserror::Error;

/// Everything that can go wrong between a parameter choice and a mesh.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("argument outside the domain: {0}")]
    Domain(String),

    #[error("parameters not admissible: {0}")]
    Inadmissible(String),

    #[error("quadrature budget of {evaluations} evaluations exhausted (best {best}, error {error})")]
    BudgetExhausted {
        best: f64,
        error: f64,
        evaluations: usize,
    },

    #[error("invalid bracket [{lo}, {hi}] with f values {f_lo}, {f_hi}")]
    InvalidBracket { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    #[error("no sign change across the slice: {}", sign_summary(samples))]
    NoSignChange { samples: Vec<(f64, f64)> },

    #[error("pole of the Gauss-map squares at z = {z} ({location})")]
    Pole { z: Complex64, location: &'static str },

    #[error("ambiguous root selection on {arc}: candidates {first} and {second}")]
    Ambiguous {
        arc: &'static str,
        first: Complex64,
        second: Complex64,
    },

    #[error("continuation step too large at z = {z}: prediction error {miss:.3e} vs root gap {gap:.3e}")]
    Continuation { z: Complex64, miss: f64, gap: f64 },

    #[error("singular evaluation at z = {z}: {what}")]
    Singular { z: Complex64, what: &'static str },

    #[error("mesh construction failed: {0}")]
    Construction(String),

    #[error("period leak: gluing gap {gap:?} (norm {norm:.3e}) exceeds tolerance")]
    PeriodLeak { gap: [f64; 3], norm: f64 },

    #[error("internal consistency check failed: {0}")]
    Consistency(String),
}

/// Residual range of the samples instead of the full list.
fn sign_summary(samples: &[(f64, f64)]) -> String {
    let finite: Vec<f64> = samples.iter().map(|s| s.1).filter(|r| r.is_finite()).collect();
    let (lo, hi) = finite.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &r| (a.min(r), b.max(r)));
    format!("{} samples, {} finite, residuals in [{lo:e}, {hi:e}]", samples.len(), finite.len())
}

pub type Result<T> = std::result::Result<T, Error>;
