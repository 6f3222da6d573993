//! Complex special functions: Γ, log Γ, Kummer's ₁F₁ and spherical Bessel `j_l`.

mod bessel;
pub(crate) mod dd;
mod gamma;
mod kummer;

pub use bessel::spherical_bessel_j;
pub use gamma::{complex_gamma, complex_log_gamma, recip_gamma};
pub use kummer::{kummer_1f1, kummer_1f1_derivative};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpecFunError {
    #[error("gamma function pole at z = {0}")]
    Pole(f64),
    #[error("overflow: {0}")]
    Overflow(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("series did not converge within {terms} terms")]
    Convergence { terms: usize },
}

/// Accuracy controls for the hypergeometric evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalAccuracy {
    pub rel_tol: f64,
    pub max_terms: usize,
    /// |z| above which the large-|z| expansion replaces the series.
    pub asymptotic_threshold: f64,
}

impl Default for EvalAccuracy {
    fn default() -> Self {
        EvalAccuracy { rel_tol: 1e-13, max_terms: 10_000, asymptotic_threshold: 40.0 }
    }
}

impl EvalAccuracy {
    pub fn validate(&self) -> Result<(), SpecFunError> {
        if !(self.rel_tol > 0.0) || self.max_terms < 1 || !(self.asymptotic_threshold > 0.0) {
            return Err(SpecFunError::Domain(format!("invalid accuracy settings {self:?}")));
        }
        Ok(())
    }
}
